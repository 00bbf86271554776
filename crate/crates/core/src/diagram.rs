//! Closure diagrams of braid words: smoothing states, circle counting,
//! the diagram-level Turaev genus, and the alternation test.
//!
//! A braid word on `n` strands closes up by joining the k-th top endpoint
//! to the k-th bottom endpoint (trace closure). No Reidemeister
//! simplification is ever performed: the crossing count of the diagram is
//! exactly the word length.

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::uf::UnionFind;

/// Choice of smoothing at one crossing.
///
/// For a positive generator the A-smoothing is the identity pattern
/// (strands run through vertically) and the B-smoothing is the cup-cap;
/// for a negative generator the roles swap. Under this convention the
/// bracket expansion of a positive letter reads
/// `A * identity + A^-1 * cupcap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    A,
    B,
}

/// One crossing of a closure diagram: the generator column (1-based, the
/// crossing occupies strand positions `column` and `column+1`) and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub column: usize,
    pub sign: Sign,
}

impl Crossing {
    fn is_cupcap(self, s: Smoothing) -> bool {
        matches!(
            (self.sign, s),
            (Sign::Pos, Smoothing::B) | (Sign::Neg, Smoothing::A)
        )
    }
}

/// The trace closure of a braid word, as a 4-regular plane diagram.
///
/// `touches[p]` lists, in word order, the crossings incident to strand
/// position `p`; together with the crossing list this encodes the arc
/// structure of the diagram.
#[derive(Debug, Clone)]
pub struct ClosureDiagram {
    n: usize,
    crossings: Vec<Crossing>,
    touches: Vec<Vec<usize>>,
}

/// Build the closure diagram of a word.
pub fn closure_diagram(word: &BraidWord) -> ClosureDiagram {
    let n = word.n();
    let crossings: Vec<Crossing> = word
        .letters()
        .iter()
        .map(|l| Crossing { column: l.index, sign: l.sign })
        .collect();
    let mut touches = vec![Vec::new(); n];
    for (k, x) in crossings.iter().enumerate() {
        touches[x.column - 1].push(k);
        touches[x.column].push(k);
    }
    ClosureDiagram { n, crossings, touches }
}

impl ClosureDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Crossing count c(D).
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn all_a(&self) -> Vec<Smoothing> {
        vec![Smoothing::A; self.crossings.len()]
    }

    pub fn all_b(&self) -> Vec<Smoothing> {
        vec![Smoothing::B; self.crossings.len()]
    }

    /// Number of closed circles after smoothing every crossing according
    /// to the assignment.
    pub fn state_circles(&self, state: &[Smoothing]) -> Result<usize> {
        if state.len() != self.crossings.len() {
            return Err(Error::AssignmentLength {
                got: state.len(),
                expected: self.crossings.len(),
            });
        }
        let mut uf = UnionFind::new();
        Ok(self.state_circles_scratch(
            |k| self.crossings[k].is_cupcap(state[k]),
            &mut uf,
            &mut Vec::new(),
        ))
    }

    /// Circle count with caller-provided scratch; `cupcap(k)` decides the
    /// smoothing of crossing k. Union-find over the open wire segments:
    /// the cap of a cup-cap merges the two incoming wires, the cup starts
    /// one fresh wire occupying both outgoing positions, and the closure
    /// joins each bottom wire back to its top wire.
    pub(crate) fn state_circles_scratch<F: Fn(usize) -> bool>(
        &self,
        cupcap: F,
        uf: &mut UnionFind,
        cur: &mut Vec<u32>,
    ) -> usize {
        uf.clear();
        cur.clear();
        for _ in 0..self.n {
            cur.push(uf.add());
        }
        for k in 0..self.crossings.len() {
            if cupcap(k) {
                let a = self.crossings[k].column - 1;
                let b = self.crossings[k].column;
                uf.union(cur[a], cur[b]);
                let fresh = uf.add();
                cur[a] = fresh;
                cur[b] = fresh;
            }
        }
        for (p, &wire) in cur.iter().enumerate() {
            uf.union(wire, p as u32);
        }
        uf.class_count()
    }

    /// Diagram-level Turaev genus `(c + 2 - |sA| - |sB|) / 2`.
    ///
    /// The quantity is even and nonnegative for every connected diagram;
    /// a violation (a split closure, for instance) is reported as an
    /// error rather than rounded away.
    pub fn turaev_genus(&self) -> Result<usize> {
        let s_a = self.state_circles(&self.all_a())?;
        let s_b = self.state_circles(&self.all_b())?;
        let c = self.crossing_count();
        let num = c as i64 + 2 - s_a as i64 - s_b as i64;
        if num < 0 || num % 2 != 0 {
            return Err(Error::TuraevIdentity { c, s_a, s_b });
        }
        Ok((num / 2) as usize)
    }

    /// True iff every component of the diagram passes its crossings
    /// strictly alternately over and under. Components without crossings
    /// are vacuously alternating.
    pub fn is_alternating(&self) -> bool {
        let c = self.crossings.len();
        // visited[k][side]: side 0 = entered at the left position.
        let mut visited = vec![[false; 2]; c];
        for start_k in 0..c {
            for start_side in 0..2 {
                if visited[start_k][start_side] {
                    continue;
                }
                let mut over_under = Vec::new();
                let (mut k, mut side) = (start_k, start_side);
                loop {
                    visited[k][side] = true;
                    let x = self.crossings[k];
                    let over = match x.sign {
                        Sign::Pos => side == 0,
                        Sign::Neg => side == 1,
                    };
                    over_under.push(over);
                    // The strand exits at the other position of the column.
                    let exit_pos = if side == 0 { x.column } else { x.column - 1 };
                    let (nk, nside) = self.next_passage(exit_pos, k);
                    k = nk;
                    side = nside;
                    if k == start_k && side == start_side {
                        break;
                    }
                }
                let len = over_under.len();
                let alternates =
                    (0..len).all(|i| over_under[i] != over_under[(i + 1) % len]);
                if !alternates {
                    return false;
                }
            }
        }
        true
    }

    /// Next crossing met when travelling down position `pos` after
    /// crossing `after`, wrapping through the closure arc. Returns the
    /// crossing index and the entry side (0 = left).
    fn next_passage(&self, pos: usize, after: usize) -> (usize, usize) {
        let list = &self.touches[pos];
        debug_assert!(!list.is_empty());
        let next = list
            .iter()
            .copied()
            .find(|&k| k > after)
            .unwrap_or(list[0]);
        let side = if self.crossings[next].column - 1 == pos { 0 } else { 1 };
        (next, side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn diagram(text: &str, n: Option<usize>) -> ClosureDiagram {
        closure_diagram(&BraidWord::parse(text, n).unwrap())
    }

    #[test]
    fn closure_diagram_shapes() {
        let d = diagram("1 1 1", None);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.n(), 2);

        let d = closure_diagram(&BraidWord::identity(3));
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.state_circles(&[]).unwrap(), 3);

        let d = diagram("1 -2 1 -2", None);
        assert_eq!(d.crossing_count(), 4);
    }

    #[test]
    fn state_circles_trefoil() {
        let d = diagram("1 1 1", None);
        assert_eq!(d.state_circles(&d.all_a()).unwrap(), 2);
        assert_eq!(d.state_circles(&d.all_b()).unwrap(), 3);
    }

    #[test]
    fn state_circles_rejects_bad_length() {
        let d = diagram("1 1 1", None);
        assert_eq!(
            d.state_circles(&[Smoothing::A]),
            Err(Error::AssignmentLength { got: 1, expected: 3 })
        );
    }

    #[test]
    fn turaev_genus_examples() {
        assert_eq!(diagram("1 1 1", None).turaev_genus().unwrap(), 0);
        assert_eq!(diagram("1 -2 1 -2", None).turaev_genus().unwrap(), 0);
        // (sigma_1 sigma_2)^4 closes to an 8-crossing positive diagram
        // with |sA| = 3, |sB| = 1.
        let d = diagram("1 2 1 2 1 2 1 2", None);
        assert_eq!(d.state_circles(&d.all_a()).unwrap(), 3);
        assert_eq!(d.state_circles(&d.all_b()).unwrap(), 1);
        assert_eq!(d.turaev_genus().unwrap(), 3);
    }

    #[test]
    fn turaev_genus_split_closure_is_an_error() {
        let d = closure_diagram(&BraidWord::parse("1", Some(4)).unwrap());
        assert!(matches!(d.turaev_genus(), Err(Error::TuraevIdentity { .. })));
    }

    #[test]
    fn alternation_examples() {
        assert!(diagram("1 -2 1 -2", None).is_alternating());
        assert!(diagram("1 1 1", None).is_alternating());
        assert!(!diagram("1 2 1 2 1 2 1 2", None).is_alternating());
        // No crossings at all: vacuously alternating.
        assert!(closure_diagram(&BraidWord::identity(2)).is_alternating());
    }
}

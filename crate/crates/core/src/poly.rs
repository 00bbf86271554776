//! Sparse Laurent polynomials with exact integer coefficients.
//!
//! Coefficients are `i64` and every operation is checked: an overflow panics
//! instead of wrapping, so a result is either exact or loud. Zero
//! coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

/// Variable tag: the bracket variable `A` or the Jones variable `t`
/// (related by `t = A^-4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::T => "t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: Var,
    coeffs: BTreeMap<i64, i64>,
}

fn add_checked(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn mul_checked(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Var, exp: i64, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { var, coeffs }
    }

    pub fn from_terms(var: Var, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(exp, coeff) in terms {
            p.add_term(exp, coeff);
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Difference between the maximal and minimal exponent; 0 for the zero
    /// polynomial and for monomials.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry = add_checked(*entry, coeff);
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.var, other.var, "variable mismatch");
        for (e, c) in other.terms() {
            self.add_term(e, c);
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = Self::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(add_checked(e1, e2), mul_checked(c1, c2));
            }
        }
        out
    }

    /// Multiply by the monomial `coeff * x^exp` in place.
    pub fn mul_monomial(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            self.coeffs.clear();
            return;
        }
        let old = std::mem::take(&mut self.coeffs);
        for (e, c) in old {
            self.coeffs.insert(add_checked(e, exp), mul_checked(c, coeff));
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Value at `x = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> i64 {
        self.terms().fold(0, |acc, (_, c)| add_checked(acc, c))
    }

    /// Sorted term list, highest exponent first, as used in reports.
    pub fn term_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .rev()
            .map(|(&e, &c)| format!("{}*{}^{}", c, self.var.symbol(), e))
            .collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        for (idx, (&exp, &coeff)) in self.coeffs.iter().rev().enumerate() {
            let mag = coeff.unsigned_abs();
            if idx == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match exp {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag == 1 {
                        write!(f, "{sym}")?;
                    } else {
                        write!(f, "{mag}{sym}")?;
                    }
                }
                _ => {
                    if mag == 1 {
                        write!(f, "{sym}^{exp}")?;
                    } else {
                        write!(f, "{mag}{sym}^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

//! Finitely supported rational linear combinations of combinatorial objects.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rat;

/// A formal sum `Σ c_x · x` over canonical representatives `x: T`.
///
/// Zero coefficients are never stored, so equality of sums is equality of the
/// underlying maps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum<T: Ord> {
    terms: BTreeMap<T, Rat>,
}

impl<T: Ord + Clone> FormalSum<T> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn singleton(x: T) -> Self {
        Self::term(x, Rat::one())
    }

    pub fn term(x: T, coeff: Rat) -> Self {
        let mut s = Self::zero();
        s.add_term(x, coeff);
        s
    }

    pub fn add_term(&mut self, x: T, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &T) -> Rat {
        self.terms.get(x).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<T, Rat> {
        self.terms
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(x, k)| (x.clone(), k * c)).collect(),
        }
    }

    /// Applies a linear map term by term.
    pub fn map_linear<U: Ord + Clone>(&self, f: impl Fn(&T) -> FormalSum<U>) -> FormalSum<U> {
        let mut out = FormalSum::zero();
        for (x, c) in &self.terms {
            for (y, k) in f(x).terms {
                out.add_term(y, k * c.clone());
            }
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rat)> for FormalSum<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rat)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (x, c) in iter {
            s.add_term(x, c);
        }
        s
    }
}

impl<T: Ord + Clone> Add for FormalSum<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (x, c) in rhs.terms {
            self.add_term(x, c);
        }
        self
    }
}

impl<T: Ord + Clone> Sub for FormalSum<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (x, c) in rhs.terms {
            self.add_term(x, -c);
        }
        self
    }
}

impl<T: Ord + Clone> Neg for FormalSum<T> {
    type Output = Self;
    fn neg(self) -> Self {
        FormalSum {
            terms: self.terms.into_iter().map(|(x, c)| (x, -c)).collect(),
        }
    }
}

impl<T: Ord + Clone> Mul<Rat> for FormalSum<T> {
    type Output = Self;
    fn mul(self, c: Rat) -> Self {
        self.scale(&c)
    }
}

impl<T: Ord + fmt::Display> fmt::Display for FormalSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_one() {
                    write!(f, "{x}")?;
                } else {
                    write!(f, "{c}·{x}")?;
                }
            } else if c.is_negative() {
                let a = -c.clone();
                if a.is_one() {
                    write!(f, " - {x}")?;
                } else {
                    write!(f, " - {a}·{x}")?;
                }
            } else if c.is_one() {
                write!(f, " + {x}")?;
            } else {
                write!(f, " + {c}·{x}")?;
            }
        }
        Ok(())
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for FormalSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

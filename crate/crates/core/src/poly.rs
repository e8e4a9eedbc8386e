//! Sparse polynomial containers with exact rational coefficients.
//!
//! All of these store `monomial -> coefficient` maps with no zero entries, so
//! equality of polynomials is equality of maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::label::{set_key, LabelSet};
use crate::rational::Rat;

/// Univariate polynomial `Σ c_d t^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<usize, Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = UniPoly::zero();
        p.add_term(0, c);
        p
    }

    /// The monomial `c · t^d`.
    pub fn monomial(d: usize, c: Rat) -> Self {
        let mut p = UniPoly::zero();
        p.add_term(d, c);
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        UniPoly::monomial(1, Rat::one())
    }

    pub fn add_term(&mut self, deg: usize, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(deg) {
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
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: usize) -> Rat {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rat)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut out = Rat::zero();
        for (d, c) in &self.coeffs {
            out += c.clone() * x.pow(*d as i64);
        }
        out
    }

    /// Composes with an affine map of the variable: returns `p(a·t + b)`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> UniPoly {
        let mut out = UniPoly::zero();
        let lin = {
            let mut l = UniPoly::zero();
            l.add_term(1, a.clone());
            l.add_term(0, b.clone());
            l
        };
        for (d, c) in &self.coeffs {
            let mut pw = UniPoly::one();
            for _ in 0..*d {
                pw = pw * lin.clone();
            }
            out = out + pw * UniPoly::constant(c.clone());
        }
        out
    }

    /// Exact division, erroring when a remainder survives.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        if divisor.is_zero() {
            return Err(Error::invalid("division by zero polynomial"));
        }
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        let dd = divisor.degree().unwrap();
        let dl = divisor.coeff(dd);
        while !rem.is_zero() && rem.degree().unwrap() >= dd {
            let rd = rem.degree().unwrap();
            let c = rem.coeff(rd) / dl.clone();
            let shift = rd - dd;
            quot.add_term(shift, c.clone());
            let scaled: UniPoly = divisor
                .coeffs
                .iter()
                .map(|(d, k)| (d + shift, k * &c))
                .collect();
            rem = rem - scaled;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::internal(format!(
                "polynomial division left remainder {rem}"
            )))
        }
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rat, Rat)]) -> UniPoly {
        let mut out = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = UniPoly::one();
            let mut denom = Rat::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut lin = UniPoly::zero();
                lin.add_term(1, Rat::one());
                lin.add_term(0, -xj.clone());
                basis = basis * lin;
                denom *= xi - xj;
            }
            out = out + basis * UniPoly::constant(yi.clone() / denom);
        }
        out
    }
}

impl FromIterator<(usize, Rat)> for UniPoly {
    fn from_iter<I: IntoIterator<Item = (usize, Rat)>>(iter: I) -> Self {
        let mut p = UniPoly::zero();
        for (d, c) in iter {
            p.add_term(d, c);
        }
        p
    }
}

impl Add for UniPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (d, c) in rhs.coeffs {
            self.add_term(d, c);
        }
        self
    }
}

impl Sub for UniPoly {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (d, c) in rhs.coeffs {
            self.add_term(d, -c);
        }
        self
    }
}

impl Neg for UniPoly {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul for UniPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = UniPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().rev().map(|(d, c)| (uni_key(*d), c)))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn uni_key(d: usize) -> String {
    match d {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{d}"),
    }
}

/// Bivariate polynomial `Σ c_{a,b} x^a y^b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(usize, usize), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, Rat::one())
    }

    pub fn monomial(dx: usize, dy: usize, c: Rat) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(dx, dy, c);
        p
    }

    pub fn add_term(&mut self, dx: usize, dy: usize, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry((dx, dy)) {
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
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, dx: usize, dy: usize) -> Rat {
        self.coeffs.get(&(dx, dy)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut out = Rat::zero();
        for ((a, b), c) in &self.coeffs {
            out += c.clone() * x.pow(*a as i64) * y.pow(*b as i64);
        }
        out
    }

    /// Substitutes polynomials for x and y.
    pub fn substitute(&self, x: &UniPoly, y: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for ((a, b), c) in &self.coeffs {
            let mut term = UniPoly::constant(c.clone());
            for _ in 0..*a {
                term = term * x.clone();
            }
            for _ in 0..*b {
                term = term * y.clone();
            }
            out = out + term;
        }
        out
    }

    /// `(x-1)^a (y-1)^b` building block used by corank-nullity sums.
    pub fn xm1_ym1(a: usize, b: usize) -> BiPoly {
        let xm1 = {
            let mut p = BiPoly::monomial(1, 0, Rat::one());
            p.add_term(0, 0, -Rat::one());
            p
        };
        let ym1 = {
            let mut p = BiPoly::monomial(0, 1, Rat::one());
            p.add_term(0, 0, -Rat::one());
            p
        };
        let mut out = BiPoly::one();
        for _ in 0..a {
            out = out * xm1.clone();
        }
        for _ in 0..b {
            out = out * ym1.clone();
        }
        out
    }
}

impl Add for BiPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((a, b), c) in rhs.coeffs {
            self.add_term(a, b, c);
        }
        self
    }
}

impl Sub for BiPoly {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for ((a, b), c) in rhs.coeffs {
            self.add_term(a, b, -c);
        }
        self
    }
}

impl Mul for BiPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = BiPoly::zero();
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &rhs.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().rev().map(|((a, b), c)| (bi_key(*a, *b), c)))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical monomial key for a bivariate term, e.g. `x^2`, `x y`, `1`.
pub fn bi_key(a: usize, b: usize) -> String {
    let var = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let (x, y) = (var("x", a), var("y", b));
    match (x.is_empty(), y.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => x,
        (true, false) => y,
        (false, false) => format!("{x} {y}"),
    }
}

/// Exponent vector of a term in `R[x1, y1^{±1}, x2, y2^{±1}]`.
///
/// The `y` exponents may be rational because submodular function values need
/// not be integers; `x` exponents stay integral in every use but are stored
/// uniformly.
pub type Exponents = [Rat; 4];

/// Laurent-type polynomial with rational exponents on four fixed variables
/// `x1, y1, x2, y2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentPoly {
    coeffs: BTreeMap<Exponents, Rat>,
}

impl ExponentPoly {
    pub fn zero() -> Self {
        ExponentPoly::default()
    }

    pub fn one() -> Self {
        ExponentPoly::monomial([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()], Rat::one())
    }

    pub fn monomial(exps: Exponents, coeff: Rat) -> Self {
        let mut p = ExponentPoly::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(exps) {
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
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.coeffs.iter()
    }

    /// The substitution `x2 = 1, y2 = x-1, x1 = y-1, y1 = (y-1)^{-1}`,
    /// turning the universal Tutte character of a matroid polytope into the
    /// corank-nullity Tutte polynomial. Requires integer exponents.
    pub fn specialize_matroid_tutte(&self) -> Result<BiPoly> {
        let mut out = BiPoly::zero();
        for ([ex1, ey1, _ex2, ey2], c) in &self.coeffs {
            let a = ex1
                .to_i64()
                .ok_or_else(|| Error::invalid("non-integer x1 exponent"))?;
            let b = ey1
                .to_i64()
                .ok_or_else(|| Error::invalid("non-integer y1 exponent"))?;
            let d = ey2
                .to_i64()
                .ok_or_else(|| Error::invalid("non-integer y2 exponent"))?;
            // x1^a y1^b -> (y-1)^(a-b), y2^d -> (x-1)^d
            let ym = a - b;
            if ym < 0 || d < 0 {
                return Err(Error::invalid(
                    "specialization produces negative exponents",
                ));
            }
            out = out + BiPoly::xm1_ym1(d as usize, ym as usize) * BiPoly::monomial(0, 0, c.clone());
        }
        Ok(out)
    }
}

impl Add for ExponentPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for ExponentPoly {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.coeffs {
            self.add_term(e, -c);
        }
        self
    }
}

impl Mul for ExponentPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = ExponentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let e = [
                    &e1[0] + &e2[0],
                    &e1[1] + &e2[1],
                    &e1[2] + &e2[2],
                    &e1[3] + &e2[3],
                ];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Canonical key for an `ExponentPoly` monomial, e.g. `x1^2 y1 y2^(3/2)`.
pub fn exponent_key(exps: &Exponents) -> String {
    let names = ["x1", "y1", "x2", "y2"];
    let mut parts = Vec::new();
    for (name, e) in names.iter().zip(exps.iter()) {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(name.to_string());
        } else if e.is_integer() && !e.is_negative() {
            parts.push(format!("{name}^{e}"));
        } else {
            parts.push(format!("{name}^({e})"));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for ExponentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|(e, c)| (exponent_key(e), c)))
    }
}

impl fmt::Debug for ExponentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in the variables `t_F` indexed by label sets (volume
/// polynomials live here). A monomial is an exponent map on flats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FlatPoly {
    coeffs: BTreeMap<BTreeMap<LabelSet, usize>, Rat>,
}

impl FlatPoly {
    pub fn zero() -> Self {
        FlatPoly::default()
    }

    pub fn add_term(&mut self, mono: BTreeMap<LabelSet, usize>, coeff: Rat) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(mono) {
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
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BTreeMap<LabelSet, usize>, &Rat)> {
        self.coeffs.iter()
    }
}

impl Add for FlatPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.coeffs {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for FlatPoly {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.coeffs {
            self.add_term(m, -c);
        }
        self
    }
}

/// Canonical key for a `FlatPoly` monomial, e.g. `t_{1} t_{1,2}^2`.
pub fn flat_key(mono: &BTreeMap<LabelSet, usize>) -> String {
    if mono.is_empty() {
        return "1".into();
    }
    mono.iter()
        .map(|(set, e)| {
            if *e == 1 {
                format!("t_{{{}}}", set_key(set))
            } else {
                format!("t_{{{}}}^{e}", set_key(set))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for FlatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|(m, c)| (flat_key(m), c)))
    }
}

impl fmt::Debug for FlatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Quasisymmetric function in the monomial basis: a map from integer
/// compositions to coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QSym {
    coeffs: BTreeMap<Vec<usize>, Rat>,
}

impl QSym {
    pub fn zero() -> Self {
        QSym::default()
    }

    pub fn add_term(&mut self, composition: Vec<usize>, coeff: Rat) {
        use std::collections::btree_map::Entry;
        assert!(composition.iter().all(|&p| p >= 1), "composition parts must be >= 1");
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(composition) {
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
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, composition: &[usize]) -> Rat {
        self.coeffs.get(composition).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.coeffs.iter()
    }

    /// Principal specialization: substitutes `k` variables equal to 1 and the
    /// rest 0, i.e. `M_alpha -> C(k, len(alpha))`.
    pub fn principal_specialization(&self, k: usize) -> Rat {
        let mut out = Rat::zero();
        for (comp, c) in &self.coeffs {
            out += c.clone() * Rat::from(binomial(k, comp.len()) as i64);
        }
        out
    }
}

impl Add for QSym {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.coeffs {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for QSym {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.coeffs {
            self.add_term(m, -c);
        }
        self
    }
}

impl fmt::Display for QSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(
            f,
            self.coeffs.iter().map(|(m, c)| {
                let parts = m.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                (format!("M_({parts})"), c)
            }),
        )
    }
}

impl fmt::Debug for QSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut out: u64 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u64 / (i + 1) as u64;
    }
    out
}

pub(crate) fn multinomial(parts: &[usize]) -> u64 {
    let mut out: u64 = 1;
    let mut seen = 0usize;
    for &p in parts {
        seen += p;
        out *= binomial(seen, p);
    }
    out
}

fn write_poly<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Rat)>,
{
    let mut first = true;
    let mut wrote = false;
    for (key, c) in terms {
        wrote = true;
        let mag = c.abs();
        let body = if mag.is_one() && key != "1" {
            key
        } else if key == "1" {
            format!("{mag}")
        } else {
            format!("{mag}·{key}")
        };
        if first {
            if c.is_negative() {
                write!(f, "-{body}")?;
            } else {
                write!(f, "{body}")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - {body}")?;
        } else {
            write!(f, " + {body}")?;
        }
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipoly_div_exact() {
        // t^2 - 3t + 2 = (t-1)(t-2)
        let chi: UniPoly = [(2, Rat::one()), (1, Rat::from(-3)), (0, Rat::from(2))]
            .into_iter()
            .collect();
        let tm1: UniPoly = [(1, Rat::one()), (0, Rat::from(-1))].into_iter().collect();
        let q = chi.div_exact(&tm1).unwrap();
        let expect: UniPoly = [(1, Rat::one()), (0, Rat::from(-2))].into_iter().collect();
        assert_eq!(q, expect);
        assert!(chi.div_exact(&UniPoly::monomial(1, Rat::one())).is_err());
    }

    #[test]
    fn interpolation_recovers_binomial() {
        // f(k) = C(k,3) at k = 0..=3 has degree 3
        let pts: Vec<(Rat, Rat)> = (0..=3)
            .map(|k| (Rat::from(k as i64), Rat::from(binomial(k, 3) as i64)))
            .collect();
        let p = UniPoly::interpolate(&pts);
        assert_eq!(p.eval(&Rat::from(5)), Rat::from(10));
        assert_eq!(p.eval(&Rat::from(7)), Rat::from(35));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[3]), 1);
        assert_eq!(multinomial(&[]), 1);
    }

    #[test]
    fn exponent_poly_specializes_to_tutte_shape() {
        // x2^2 y2 + 2 x1 x2 y1 + x1^2 y1 -> x + y for the rank-1 segment
        let z = |n: i64| Rat::from(n);
        let mut p = ExponentPoly::zero();
        p.add_term([z(0), z(0), z(2), z(1)], Rat::one());
        p.add_term([z(1), z(1), z(1), z(0)], Rat::from(2));
        p.add_term([z(2), z(1), z(0), z(0)], Rat::one());
        let t = p.specialize_matroid_tutte().unwrap();
        let mut expect = BiPoly::zero();
        expect.add_term(1, 0, Rat::one());
        expect.add_term(0, 1, Rat::one());
        assert_eq!(t, expect);
    }
}

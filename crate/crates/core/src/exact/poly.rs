use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::multi_index::{enumerate, Enumeration, MultiIndex};
use super::Rational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly::monomial(MultiIndex::unit(nvars, i), Rational::one())
    }

    pub fn monomial(exponents: MultiIndex, c: Rational) -> Self {
        let mut p = Poly::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.order() == 0)
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.order() == degree)
    }

    fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to the 0-based variable `i`.
    pub fn diff(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index {i} out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(lower) = m.lowered(i) {
                out.add_term(lower, c * Rational::from_integer(m.get(i).into()));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity mismatch");
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.nvars];
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in m.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[j];
                    cache.push(next);
                }
                term *= &cache[e as usize];
            }
            total += term;
        }
        total
    }

    /// Substitutes `subs[j]` for variable `j`; the result lives in the
    /// variables of the substituted polynomials.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        let target = subs.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(s.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (j, &e) in m.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap() * &subs[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Same polynomial viewed in `nvars >= self.nvars()` variables; the
    /// extra variables are appended.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.entries().to_vec();
                    e.resize(nvars, 0);
                    (MultiIndex::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Leading term under the graded order used for division.
    fn leading(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| graded_cmp(a, b))
    }

    /// Quotient `self / divisor` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if divisor.len() == 1 {
            let (dm, dc) = divisor.terms.iter().next().unwrap();
            let mut q = Poly::zero(self.nvars);
            for (m, c) in &self.terms {
                let e = monomial_quotient(m, dm)?;
                q.terms.insert(e, c / dc);
            }
            return Some(q);
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let e = monomial_quotient(&rm, &dm)?;
            let c = rc / &dc;
            let step = Poly::monomial(e, c);
            rem = &rem - &(&step * divisor);
            q = &q + &step;
        }
        Some(q)
    }

    /// Coefficient vector of a form of the given degree, indexed by the
    /// exact-order enumeration. Terms of other degrees are ignored.
    pub fn form_coefficients(&self, degree: u32) -> Vec<Rational> {
        enumerate(self.nvars, degree, Enumeration::ExactOrder)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// Inverse of [`Poly::form_coefficients`].
    pub fn from_form_coefficients(nvars: usize, degree: u32, coeffs: &[Rational]) -> Poly {
        let index = enumerate(nvars, degree, Enumeration::ExactOrder);
        assert_eq!(index.len(), coeffs.len(), "coefficient vector length mismatch");
        Poly::from_terms(nvars, index.into_iter().zip(coeffs.iter().cloned()))
    }

    /// Prints the polynomial in the input grammar with variables named
    /// `{prefix}1 ... {prefix}k`.
    pub fn to_expr(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| graded_cmp(b, a));
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono = monomial_string(m, prefix);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Graded order: total degree first, then exponent vectors lexicographically.
fn graded_cmp(a: &MultiIndex, b: &MultiIndex) -> std::cmp::Ordering {
    a.order().cmp(&b.order()).then_with(|| a.cmp(b))
}

fn monomial_quotient(m: &MultiIndex, d: &MultiIndex) -> Option<MultiIndex> {
    let mut e = Vec::with_capacity(m.len());
    for (a, b) in m.entries().iter().zip(d.entries()) {
        e.push(a.checked_sub(*b)?);
    }
    Some(MultiIndex::new(e))
}

fn monomial_string(m: &MultiIndex, prefix: &str) -> String {
    let mut parts = Vec::new();
    for (j, &e) in m.entries().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{prefix}{}", j + 1)),
            _ => parts.push(format!("{prefix}{}^{e}", j + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr("u"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.sum(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

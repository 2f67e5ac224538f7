use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Rational;

/// Quotient of polynomials `num / den`.
///
/// The denominator is kept as a product of distinct non-constant factors
/// with multiplicities. Differentiating `n / b^e` then only raises `e` by
/// one instead of squaring the whole denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    /// `num / den`. A constant denominator is folded into the numerator.
    ///
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.nvars(), den.nvars(), "rational function arity mismatch");
        if den.is_constant() {
            let c = den.constant_term();
            return RatFunc::from_poly(num.scale(&(Rational::one() / c)));
        }
        RatFunc { num, den: vec![(den, 1)] }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Factored denominator `[(base, exponent)]`; empty for polynomials.
    pub fn denominator_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(self.nvars()), |acc, (b, e)| &acc * &b.pow(*e))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Evaluates at `point`; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut den = Rational::one();
        for (b, e) in &self.den {
            let v = b.eval(point);
            if v.is_zero() {
                return None;
            }
            den *= num_traits::pow(v, *e as usize);
        }
        Some(self.num.eval(point) / den)
    }

    /// Whether the denominator is nonzero at `point`.
    pub fn defined_at(&self, point: &[Rational]) -> bool {
        self.den.iter().all(|(b, _)| !b.eval(point).is_zero())
    }

    /// Partial derivative in the 0-based variable `i` (quotient rule on the
    /// factored denominator).
    pub fn diff(&self, i: usize) -> RatFunc {
        if self.den.is_empty() {
            return RatFunc::from_poly(self.num.diff(i));
        }
        // d(n / prod b_j^e_j) = (n' prod b_j - n sum_j e_j b_j' prod_{l != j} b_l) / prod b_j^(e_j + 1)
        let bases: Vec<&Poly> = self.den.iter().map(|(b, _)| b).collect();
        let all = bases.iter().fold(Poly::one(self.nvars()), |acc, b| &acc * b);
        let mut num = &self.num.diff(i) * &all;
        for (j, (b, e)) in self.den.iter().enumerate() {
            let db = b.diff(i);
            if db.is_zero() {
                continue;
            }
            let others = bases
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != j)
                .fold(Poly::one(self.nvars()), |acc, (_, b)| &acc * b);
            let term = &(&self.num * &db) * &others;
            num = &num - &term.scale(&Rational::from_integer((*e).into()));
        }
        let den = self.den.iter().map(|(b, e)| (b.clone(), e + 1)).collect();
        RatFunc { num, den }.normalized()
    }

    fn normalized(mut self) -> RatFunc {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    fn lcm_den(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> = a.to_vec();
        for (base, e) in b {
            match out.iter_mut().find(|(p, _)| p == base) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => out.push((base.clone(), *e)),
            }
        }
        out
    }

    /// Numerator of `self` once brought over the denominator `target`, which
    /// must be a multiple of this function's denominator.
    fn numerator_over(&self, target: &[(Poly, u32)]) -> Poly {
        let mut num = self.num.clone();
        for (base, e) in target {
            let own = self.den.iter().find(|(p, _)| p == base).map_or(0, |(_, x)| *x);
            debug_assert!(own <= *e);
            if *e > own {
                num = &num * &base.pow(e - own);
            }
        }
        num
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let den = RatFunc::lcm_den(&self.den, &other.den);
        let num = &self.numerator_over(&den) + &other.numerator_over(&den);
        RatFunc { num, den }.normalized()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        for (base, e) in &other.den {
            match den.iter_mut().find(|(p, _)| p == base) {
                Some(slot) => slot.1 += e,
                None => den.push((base.clone(), *e)),
            }
        }
        RatFunc { num: &self.num * &other.num, den }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, subs: &[Poly]) -> RatFunc {
        let num = self.num.compose(subs);
        let mut out = RatFunc::from_poly(num);
        for (b, e) in &self.den {
            let nb = b.compose(subs);
            assert!(!nb.is_zero(), "substitution annihilates a denominator");
            let inv = RatFunc::new(Poly::one(nb.nvars()), nb);
            for _ in 0..*e {
                out = out.mul(&inv);
            }
        }
        out
    }

    pub fn extend_vars(&self, nvars: usize) -> RatFunc {
        RatFunc {
            num: self.num.extend_vars(nvars),
            den: self.den.iter().map(|(b, e)| (b.extend_vars(nvars), *e)).collect(),
        }
    }
}

/// Multiplies every entry of a row by the least common multiple of the
/// row's denominators, returning polynomial entries. The row spans the same
/// line over the function field.
pub fn clear_row_denominators(row: &[RatFunc]) -> Vec<Poly> {
    let den = row.iter().fold(Vec::new(), |acc, f| RatFunc::lcm_den(&acc, &f.den));
    row.iter().map(|f| f.numerator_over(&den)).collect()
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (b, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({b})")?;
            } else {
                write!(f, "({b})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

//! Jet matrices of a parametrization, osculating dimensions and Laplace
//! equations.
//!
//! A parametrization `x: Q^k -> Q^N` is lifted to the affine cone as
//! `X(u) = (1, x(u))`; its partial derivative of multi-index `I` is
//! `X^I = (0, x^I)` for `|I| >= 1`. The jet matrix `J_t(u)` stacks `X^I(u)`
//! for all `|I| <= t` in graded order, so `J_{t-1}` is a prefix of `J_t`
//! and `d_t = rank J_t - 1` is the dimension of the osculating space.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::bareiss::poly_rank;
use crate::exact::multi_index::{count_exact, count_up_to};
use crate::exact::ratfunc::clear_row_denominators;
use crate::exact::{binomial, enumerate, q, Enumeration, MatrixQ, MultiIndex, Poly, RatFunc, Rational};
use crate::sampling::{Mode, Options, Stream};

/// A local parametrization of a `k`-dimensional variety in `P^N`, given in
/// an affine chart by `N` rational functions of `u_1 ... u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    name: String,
    k: usize,
    coords: Vec<RatFunc>,
}

impl Parametrization {
    pub fn new(name: impl Into<String>, k: usize, coords: Vec<RatFunc>) -> Result<Self> {
        let name = name.into();
        if k == 0 {
            return Err(Error::InvalidParametrization("k must be positive".into()));
        }
        if coords.is_empty() {
            return Err(Error::InvalidParametrization("at least one coordinate is required".into()));
        }
        if k > coords.len() {
            return Err(Error::InvalidParametrization(format!(
                "source dimension k = {k} exceeds ambient dimension N = {}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| c.nvars() != k) {
            return Err(Error::InvalidParametrization(format!(
                "coordinate {c} lives in {} variables, expected {k}",
                c.nvars()
            )));
        }
        Ok(Parametrization { name, k, coords })
    }

    pub fn from_polys(name: impl Into<String>, k: usize, coords: Vec<Poly>) -> Result<Self> {
        Parametrization::new(name, k, coords.into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient projective dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn is_polynomial(&self) -> bool {
        self.coords.iter().all(RatFunc::is_polynomial)
    }

    /// `(1, x_1, ..., x_N)`.
    pub fn lift(&self) -> Vec<RatFunc> {
        let mut out = Vec::with_capacity(self.coords.len() + 1);
        out.push(RatFunc::from_poly(Poly::one(self.k)));
        out.extend(self.coords.iter().cloned());
        out
    }

    pub fn defined_at(&self, u: &[Rational]) -> bool {
        self.coords.iter().all(|c| c.defined_at(u))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Reparametrization `u -> A u` for a square integer matrix `A`.
    pub fn reparametrize(&self, a: &[Vec<i64>]) -> Result<Self> {
        if a.len() != self.k || a.iter().any(|r| r.len() != self.k) {
            return Err(Error::InvalidParametrization("reparametrization must be k x k".into()));
        }
        let subs: Vec<Poly> = a
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(Poly::zero(self.k), |acc, (j, &c)| {
                    &acc + &Poly::var(self.k, j).scale(&q(c))
                })
            })
            .collect();
        let coords = self.coords.iter().map(|c| c.compose(&subs)).collect();
        Parametrization::new(format!("{}|reparam", self.name), self.k, coords)
    }

    /// Applies an `(N+1) x (N+1)` integer matrix to the homogeneous lift and
    /// returns to the affine chart where the new coordinate 0 is nonzero.
    pub fn projective_transform(&self, m: &[Vec<i64>]) -> Result<Self> {
        let n1 = self.ambient_dim() + 1;
        if m.len() != n1 || m.iter().any(|r| r.len() != n1) {
            return Err(Error::InvalidParametrization("projective transform must be (N+1) x (N+1)".into()));
        }
        let lift = self.lift();
        let image: Vec<RatFunc> = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&lift)
                    .filter(|(c, _)| **c != 0)
                    .fold(RatFunc::from_poly(Poly::zero(self.k)), |acc, (&c, x)| acc.add(&x.scale(&q(c))))
            })
            .collect();
        let y0 = &image[0];
        if y0.is_zero() {
            return Err(Error::InvalidParametrization("transformed chart coordinate vanishes identically".into()));
        }
        // 1 / y0 = den(y0) / num(y0)
        let inv = RatFunc::new(y0.denominator(), y0.numerator().clone());
        let coords = image[1..].iter().map(|y| y.mul(&inv)).collect();
        Parametrization::new(format!("{}|projective", self.name), self.k, coords)
    }
}

/// Symbolic partial derivatives of the lift up to a fixed order.
#[derive(Clone, Debug)]
pub struct Jets {
    k: usize,
    order: u32,
    index: Vec<MultiIndex>,
    rows: Vec<Vec<RatFunc>>,
}

impl Jets {
    pub fn new(p: &Parametrization, order: u32) -> Self {
        let index = enumerate(p.k(), order, Enumeration::UpToOrder);
        let mut position: HashMap<MultiIndex, usize> = HashMap::with_capacity(index.len());
        let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(index.len());
        for (pos, mi) in index.iter().enumerate() {
            let row = match mi.last_nonzero() {
                None => p.lift(),
                Some(j) => {
                    let parent = &rows[position[&mi.lowered(j).unwrap()]];
                    parent.iter().map(|f| f.diff(j)).collect()
                }
            };
            position.insert(mi.clone(), pos);
            rows.push(row);
        }
        Jets { k: p.k(), order, index, rows }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self) -> &[MultiIndex] {
        &self.index
    }

    /// Rows `X^I` for `|I| <= t`.
    pub fn rows_up_to(&self, t: u32) -> &[Vec<RatFunc>] {
        &self.rows[..count_up_to(self.k, t)]
    }

    pub fn row(&self, mi: &MultiIndex) -> &[RatFunc] {
        let pos = self.index.iter().position(|m| m == mi).expect("multi-index beyond jet order");
        &self.rows[pos]
    }

    /// Evaluates every derivative at `u`.
    pub fn eval(&self, u: &[Rational]) -> Result<EvaluatedJets> {
        let mut values = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut vals = Vec::with_capacity(row.len());
            for f in row {
                vals.push(f.eval(u).ok_or(Error::DenominatorVanishes)?);
            }
            values.push(vals);
        }
        Ok(EvaluatedJets { k: self.k, order: self.order, index: self.index.clone(), values })
    }

    /// Rank of `J_t` over the rational function field.
    pub fn symbolic_rank(&self, t: u32) -> usize {
        let rows: Vec<Vec<Poly>> = self.rows_up_to(t).iter().map(|r| clear_row_denominators(r)).collect();
        let cols = rows.first().map_or(0, Vec::len);
        poly_rank(rows, cols)
    }
}

/// Derivatives of the lift evaluated at one point.
#[derive(Clone, Debug)]
pub struct EvaluatedJets {
    k: usize,
    order: u32,
    index: Vec<MultiIndex>,
    values: Vec<Vec<Rational>>,
}

impl EvaluatedJets {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `J_t(u)`.
    pub fn matrix(&self, t: u32) -> MatrixQ {
        let n = count_up_to(self.k, t);
        let cols = self.values[0].len();
        MatrixQ::from_rows(cols, self.values[..n].to_vec())
    }

    pub fn row(&self, mi: &MultiIndex) -> &[Rational] {
        let pos = self.index.iter().position(|m| m == mi).expect("multi-index beyond jet order");
        &self.values[pos]
    }

    /// `rank J_t(u)` for `t = 0 ..= order`.
    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.order).map(|t| self.matrix(t).rank()).collect()
    }
}

/// Jet matrix at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMatrix {
    pub order: u32,
    pub point: Vec<Rational>,
    pub index: Vec<MultiIndex>,
    pub rows: MatrixQ,
}

pub fn jet_matrix(p: &Parametrization, u: &[Rational], t: u32) -> Result<JetMatrix> {
    check_point(p, u)?;
    let jets = Jets::new(p, t).eval(u)?;
    Ok(JetMatrix {
        order: t,
        point: u.to_vec(),
        index: enumerate(p.k(), t, Enumeration::UpToOrder),
        rows: jets.matrix(t),
    })
}

fn check_point(p: &Parametrization, u: &[Rational]) -> Result<()> {
    if u.len() != p.k() {
        return Err(Error::InvalidParametrization(format!(
            "point has {} coordinates, expected {}",
            u.len(),
            p.k()
        )));
    }
    Ok(())
}

/// Up to `count` seeded parameter points at which every coordinate is defined.
pub fn sample_points(p: &Parametrization, opts: &Options, count: usize) -> Result<Vec<Vec<Rational>>> {
    let mut sampler = opts.sampler(Stream::Parameters);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count && draws < opts.max_draws().max(count) {
        draws += 1;
        let u = sampler.point(p.k());
        if p.defined_at(&u) {
            out.push(u);
        }
    }
    if out.is_empty() && count > 0 {
        return Err(Error::DenominatorVanishes);
    }
    Ok(out)
}

/// Generic ranks of `J_0 ..= J_{t_max}` under the requested mode.
pub fn generic_jet_ranks(p: &Parametrization, t_max: u32, opts: &Options) -> Result<Vec<usize>> {
    let jets = Jets::new(p, t_max);
    match opts.mode {
        Mode::Symbolic => Ok((0..=t_max).map(|t| jets.symbolic_rank(t)).collect()),
        Mode::Sampled => {
            let mut best = vec![0; t_max as usize + 1];
            for u in sample_points(p, opts, opts.samples.max(1))? {
                for (b, r) in best.iter_mut().zip(jets.eval(&u)?.ranks()) {
                    *b = (*b).max(r);
                }
            }
            Ok(best)
        }
    }
}

/// `d_t`, the dimension of the `t`-th osculating space at a general point.
pub fn osc_dim(p: &Parametrization, t: u32, opts: &Options) -> Result<usize> {
    Ok(generic_jet_ranks(p, t, opts)?[t as usize] - 1)
}

/// `[d_0, d_1, ..., d_{t_max}]` with `d_0 = 0`.
pub fn osc_dims(p: &Parametrization, t_max: u32, opts: &Options) -> Result<Vec<usize>> {
    Ok(generic_jet_ranks(p, t_max, opts)?.into_iter().map(|r| r - 1).collect())
}

/// Fails with [`Error::NotImmersion`] when `d_1 < k`.
pub fn check_immersion(p: &Parametrization, opts: &Options) -> Result<()> {
    let d1 = osc_dim(p, 1, opts)?;
    if d1 < p.k() {
        return Err(Error::NotImmersion { d1, k: p.k() });
    }
    Ok(())
}

/// A sampled point at which `J_0 ..= J_{t_max}` all attain their generic
/// ranks, together with the jets evaluated there.
#[derive(Clone, Debug)]
pub struct GenericPoint {
    pub point: Vec<Rational>,
    pub jets: EvaluatedJets,
    /// Generic ranks of `J_0 ..= J_{t_max}`.
    pub ranks: Vec<usize>,
}

/// Finds a generic point with jets evaluated to order `jet_order >= t_max`.
/// The `skip`-th qualifying point is returned, so callers can ask for
/// several distinct generic points.
pub fn generic_point_nth(
    p: &Parametrization,
    t_max: u32,
    jet_order: u32,
    skip: usize,
    opts: &Options,
) -> Result<GenericPoint> {
    let target = generic_jet_ranks(p, t_max, opts)?;
    let jets = Jets::new(p, jet_order.max(t_max));
    let mut found = 0;
    for u in sample_points(p, opts, opts.max_draws())? {
        let ev = jets.eval(&u)?;
        let ok = (0..=t_max).all(|t| ev.matrix(t).rank() == target[t as usize]);
        if ok {
            if found == skip {
                return Ok(GenericPoint { point: u, jets: ev, ranks: target });
            }
            found += 1;
        }
    }
    Err(Error::NonGenericPoint)
}

pub fn generic_point(p: &Parametrization, t_max: u32, jet_order: u32, opts: &Options) -> Result<GenericPoint> {
    generic_point_nth(p, t_max, jet_order, 0, opts)
}

/// Evaluates jets to `jet_order` at `u` after checking that `J_0 ..= J_{t_max}`
/// attain their generic ranks there.
pub fn ensure_generic_at(
    p: &Parametrization,
    u: &[Rational],
    t_max: u32,
    jet_order: u32,
    opts: &Options,
) -> Result<EvaluatedJets> {
    check_point(p, u)?;
    let target = generic_jet_ranks(p, t_max, opts)?;
    let jets = Jets::new(p, jet_order.max(t_max)).eval(u)?;
    if (0..=t_max).any(|t| jets.matrix(t).rank() != target[t as usize]) {
        return Err(Error::NonGenericPoint);
    }
    Ok(jets)
}

/// Up to `count` distinct generic points.
pub fn generic_points(
    p: &Parametrization,
    t_max: u32,
    jet_order: u32,
    count: usize,
    opts: &Options,
) -> Result<Vec<GenericPoint>> {
    let target = generic_jet_ranks(p, t_max, opts)?;
    let jets = Jets::new(p, jet_order.max(t_max));
    let mut out = Vec::new();
    for u in sample_points(p, opts, opts.max_draws())? {
        let ev = jets.eval(&u)?;
        if (0..=t_max).all(|t| ev.matrix(t).rank() == target[t as usize]) {
            out.push(GenericPoint { point: u, jets: ev, ranks: target.clone() });
            if out.len() == count {
                break;
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NonGenericPoint);
    }
    Ok(out)
}

/// `delta_s`, the number of independent Laplace equations of order `s`
/// (pointwise convention): the new left-kernel dimension of `J_s`.
pub fn laplace_count(p: &Parametrization, s: u32, opts: &Options) -> Result<usize> {
    if s == 0 {
        return Err(Error::InvalidOrder(s));
    }
    let d = osc_dims(p, s, opts)?;
    Ok(count_exact(p.k(), s) - (d[s as usize] - d[s as usize - 1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaplaceMode {
    /// Coefficients are numbers valid at one point of the variety.
    Pointwise,
    /// Coefficients are constants and the relation holds identically in `u`.
    ConstantCoefficient,
}

/// Independent Laplace equations `sum_{|I| <= s} E_I X^I = 0` of order `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceSystem {
    pub order: u32,
    pub vars: usize,
    pub mode: LaplaceMode,
    /// Up-to-order-`s` multi-indices labelling the entries of each vector.
    pub index: Vec<MultiIndex>,
    pub basis: Vec<Vec<Rational>>,
    pub point: Option<Vec<Rational>>,
}

impl LaplaceSystem {
    /// `delta_s`.
    pub fn count(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `E_I` with `|I| = s` of each equation.
    pub fn top_parts(&self) -> Vec<Vec<Rational>> {
        let start = self.index.len() - count_exact(self.vars, self.order);
        self.basis.iter().map(|v| v[start..].to_vec()).collect()
    }
}

/// Keeps the vectors of `kernel` that are new in order `s`: echelonize with
/// the top-order coordinates first and keep rows pivoting there.
fn new_top_order_relations(kernel: Vec<Vec<Rational>>, len: usize, ntop: usize) -> Vec<Vec<Rational>> {
    if kernel.is_empty() {
        return kernel;
    }
    let low = len - ntop;
    let perm: Vec<usize> = (low..len).chain(0..low).collect();
    let (rref, pivots) = MatrixQ::from_rows(len, kernel).select_columns(&perm).rref();
    let mut out = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        if pc >= ntop {
            break;
        }
        let mut v = vec![Rational::zero(); len];
        for (slot, &orig) in perm.iter().enumerate() {
            v[orig] = rref[(i, slot)].clone();
        }
        out.push(v);
    }
    out
}

/// Pointwise Laplace equations of order `s` from jets evaluated at a point
/// (no genericity check).
pub fn laplace_basis_from_jets(jets: &EvaluatedJets, vars: usize, s: u32, point: &[Rational]) -> LaplaceSystem {
    let m = jets.matrix(s);
    let kernel = m.left_nullspace();
    let basis = new_top_order_relations(kernel, m.rows(), count_exact(vars, s));
    LaplaceSystem {
        order: s,
        vars,
        mode: LaplaceMode::Pointwise,
        index: enumerate(vars, s, Enumeration::UpToOrder),
        basis,
        point: Some(point.to_vec()),
    }
}

/// Pointwise Laplace equations of order `s` at `u`, which must be generic
/// for `J_{s-1}` and `J_s`.
pub fn laplace_basis(p: &Parametrization, s: u32, u: &[Rational], opts: &Options) -> Result<LaplaceSystem> {
    if s == 0 {
        return Err(Error::InvalidOrder(s));
    }
    let jets = ensure_generic_at(p, u, s, s, opts)?;
    Ok(laplace_basis_from_jets(&jets, p.k(), s, u))
}

/// Constant-coefficient Laplace equations of order `s`: relations among the
/// `X^I` holding identically in `u`, with a nonzero top-order part modulo
/// lower-order identities.
pub fn global_laplace_basis(p: &Parametrization, s: u32) -> Result<LaplaceSystem> {
    if s == 0 {
        return Err(Error::InvalidOrder(s));
    }
    if !p.is_polynomial() {
        return Err(Error::UnsupportedRationalCoords);
    }
    let jets = Jets::new(p, s);
    let rows = jets.rows_up_to(s);
    // One column per (coordinate, monomial) pair occurring anywhere.
    let mut columns: BTreeSet<(usize, MultiIndex)> = BTreeSet::new();
    for row in rows {
        for (c, f) in row.iter().enumerate() {
            for (m, _) in f.numerator().terms() {
                columns.insert((c, m.clone()));
            }
        }
    }
    let columns: Vec<(usize, MultiIndex)> = columns.into_iter().collect();
    let matrix = MatrixQ::from_rows(
        columns.len(),
        rows.iter()
            .map(|row| columns.iter().map(|(c, m)| row[*c].numerator().coeff(m)).collect())
            .collect(),
    );
    let kernel = if columns.is_empty() {
        MatrixQ::identity(rows.len()).row_vecs()
    } else {
        matrix.left_nullspace()
    };
    let basis = new_top_order_relations(kernel, rows.len(), count_exact(p.k(), s));
    Ok(LaplaceSystem {
        order: s,
        vars: p.k(),
        mode: LaplaceMode::ConstantCoefficient,
        index: enumerate(p.k(), s, Enumeration::UpToOrder),
        basis,
        point: None,
    })
}

/// Expected dimension data for order `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDims {
    /// `e_t = min(N, d_{t-1} + binom(k-1+t, t))`.
    pub expected: usize,
    /// `k_t = binom(k+t, t) - 1`.
    pub k_t: usize,
    /// `max(0, k_t - N)`.
    pub trivial: usize,
    /// Relations forced because `d_{t-1} + binom(k-1+t, t)` exceeds `N`.
    pub forced: usize,
}

pub fn expected_dims(k: usize, n: usize, d_prev: usize, t: u32) -> ExpectedDims {
    let unconstrained = d_prev + count_exact(k, t);
    let k_t = binomial(k + t as usize, t as usize) - 1;
    ExpectedDims {
        expected: unconstrained.min(n),
        k_t,
        trivial: k_t.saturating_sub(n),
        forced: unconstrained.saturating_sub(n),
    }
}

/// Per-order osculating data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile {
    pub t: u32,
    pub d: usize,
    pub expected: usize,
    pub k_t: usize,
    pub trivial: usize,
    pub forced: usize,
    /// Pointwise Laplace count `delta_t`.
    pub delta: usize,
    /// `delta_t - forced`: equations beyond those the ambient dimension forces,
    /// so that `d_t = e_t - excess`.
    pub excess: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsculatingProfile {
    pub k: usize,
    pub n: usize,
    pub orders: Vec<OrderProfile>,
}

impl OsculatingProfile {
    pub fn get(&self, t: u32) -> Option<&OrderProfile> {
        self.orders.iter().find(|o| o.t == t)
    }
}

pub fn osculating_profile(p: &Parametrization, t_max: u32, opts: &Options) -> Result<OsculatingProfile> {
    let d = osc_dims(p, t_max, opts)?;
    let (k, n) = (p.k(), p.ambient_dim());
    let orders = (1..=t_max)
        .map(|t| {
            let ti = t as usize;
            let exp = expected_dims(k, n, d[ti - 1], t);
            let delta = count_exact(k, t) - (d[ti] - d[ti - 1]);
            OrderProfile {
                t,
                d: d[ti],
                expected: exp.expected,
                k_t: exp.k_t,
                trivial: exp.trivial,
                forced: exp.forced,
                delta,
                excess: delta - exp.forced,
            }
        })
        .collect();
    Ok(OsculatingProfile { k, n, orders })
}

/// Sum of `E_I X^I(u)`; zero for every Laplace equation at its point.
pub fn apply_relation(jets: &EvaluatedJets, index: &[MultiIndex], e: &[Rational]) -> Vec<Rational> {
    let cols = jets.row(&index[0]).len();
    let mut acc = vec![Rational::zero(); cols];
    for (mi, c) in index.iter().zip(e) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(jets.row(mi)) {
            *a += c * x;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn rnc4() -> Parametrization {
        let u = Poly::var(1, 0);
        Parametrization::from_polys("rnc(4)", 1, (1..=4).map(|e| u.pow(e)).collect()).unwrap()
    }

    fn cone_rnc4() -> Parametrization {
        let u = Poly::var(2, 0);
        let w = Poly::var(2, 1);
        Parametrization::from_polys("cone_rnc4", 2, vec![u.clone(), u.pow(2), u.pow(3), &u.pow(4) + &w]).unwrap()
    }

    fn linear(k: usize, n: usize) -> Parametrization {
        let coords = (0..n).map(|i| if i < k { Poly::var(k, i) } else { Poly::zero(k) }).collect();
        Parametrization::from_polys("linear", k, coords).unwrap()
    }

    #[test]
    fn rnc4_jet_matrix_at_one() {
        let jm = jet_matrix(&rnc4(), &[q(1)], 2).unwrap();
        let want = MatrixQ::from_i64(&[&[1, 1, 1, 1, 1], &[0, 1, 2, 3, 4], &[0, 0, 2, 6, 12]]);
        assert_eq!(jm.rows, want);
        assert_eq!(jm.rows.rank(), 3);
    }

    #[test]
    fn linear_second_derivatives_vanish() {
        let jm = jet_matrix(&linear(3, 5), &[q(2), q(-1), q(7)], 2).unwrap();
        assert_eq!(jm.rows.rows(), 10);
        for i in 4..10 {
            assert!(jm.rows.row(i).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rnc4_osculating_dimensions_both_modes() {
        for opts in [Options::default(), Options::symbolic()] {
            assert_eq!(osc_dims(&rnc4(), 5, &opts).unwrap(), vec![0, 1, 2, 3, 4, 4]);
        }
    }

    #[test]
    fn cone_laplace_data() {
        let p = cone_rnc4();
        assert_eq!(osc_dim(&p, 2, &Options::default()).unwrap(), 3);
        assert_eq!(laplace_count(&p, 2, &Options::default()).unwrap(), 2);
        let gp = generic_point(&p, 2, 2, &Options::default()).unwrap();
        let sys = laplace_basis(&p, 2, &gp.point, &Options::default()).unwrap();
        assert_eq!(sys.count(), 2);
        for e in &sys.basis {
            assert!(apply_relation(&gp.jets, &sys.index, e).iter().all(Zero::is_zero));
        }
        // tops are v_u v_w and v_w^2
        let tops = sys.top_parts();
        assert_eq!(tops, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn linear_laplace_basis_is_all_second_derivatives() {
        let p = linear(2, 4);
        let sys = laplace_basis(&p, 2, &[q(3), q(5)], &Options::default()).unwrap();
        assert_eq!(sys.count(), 3);
        assert_eq!(sys.top_parts(), MatrixQ::identity(3).row_vecs());
    }

    #[test]
    fn rnc4_order_five_equation() {
        let p = rnc4();
        let sys = laplace_basis(&p, 5, &[q(2)], &Options::default()).unwrap();
        assert_eq!(sys.count(), 1);
        let global = global_laplace_basis(&p, 5).unwrap();
        assert_eq!(global.count(), 1);
        assert_eq!(global.basis[0], vec![q(0), q(0), q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn expected_dimension_arithmetic() {
        assert_eq!(expected_dims(2, 5, 2, 2), ExpectedDims { expected: 5, k_t: 5, trivial: 0, forced: 0 });
        assert_eq!(expected_dims(3, 5, 3, 2), ExpectedDims { expected: 5, k_t: 9, trivial: 4, forced: 4 });
        assert_eq!(expected_dims(1, 4, 4, 5), ExpectedDims { expected: 4, k_t: 5, trivial: 1, forced: 1 });
    }

    #[test]
    fn rational_denominator_rejected_by_global_mode() {
        let u = Poly::var(1, 0);
        let p = Parametrization::new(
            "hyperbola",
            1,
            vec![RatFunc::from_poly(u.clone()), RatFunc::new(Poly::one(1), &u + &Poly::one(1))],
        )
        .unwrap();
        assert_eq!(global_laplace_basis(&p, 2), Err(Error::UnsupportedRationalCoords));
        assert_eq!(osc_dims(&p, 2, &Options::default()).unwrap(), vec![0, 1, 2]);
        assert_eq!(osc_dims(&p, 2, &Options::symbolic()).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn invalid_parametrizations() {
        let u = Poly::var(2, 0);
        assert!(Parametrization::from_polys("x", 3, vec![u.clone()]).is_err());
        assert!(Parametrization::from_polys("x", 1, vec![u]).is_err());
    }
}

//! Osculating varieties, osculating defects, Gauss maps, dual varieties and
//! the theorem checkers built on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::bareiss::{poly_kernel, poly_rank};
use crate::exact::multi_index::{count_exact, count_up_to};
use crate::exact::ratfunc::clear_row_denominators;
use crate::exact::{dot, enumerate, Enumeration, MatrixQ, MultiIndex, Poly, RatFunc, Rational};
use crate::forms::{contains, fundamental_form_from_jets, jacobian, partials_system, FormSystem};
use crate::jets::{generic_points, osc_dims, sample_points, EvaluatedJets, Jets, Parametrization};
use crate::sampling::{Mode, Options, Stream};

fn require_order(t: u32, min: u32) -> Result<()> {
    if t < min {
        return Err(Error::InvalidOrder(t));
    }
    Ok(())
}

/// Rows of the differential of `Psi(u, lambda) = sum_{|I| <= t} lambda_I X^I(u)`:
/// the `X^I` themselves, then `sum_I lambda_I X^{I + e_j}` for each `j`.
/// `jets` must reach order `t + 1`.
fn join_differential(jets: &EvaluatedJets, k: usize, t: u32, lambda: &[Rational]) -> MatrixQ {
    let index = enumerate(k, t, Enumeration::UpToOrder);
    let mut rows: Vec<Vec<Rational>> = index.iter().map(|mi| jets.row(mi).to_vec()).collect();
    let cols = rows[0].len();
    for j in 0..k {
        let mut acc = vec![Rational::from_integer(0.into()); cols];
        for (mi, l) in index.iter().zip(lambda) {
            for (a, x) in acc.iter_mut().zip(jets.row(&mi.raised(j))) {
                *a += l * x;
            }
        }
        rows.push(acc);
    }
    MatrixQ::from_rows(cols, rows)
}

/// Dimension of the variety of osculating `t`-spaces, `dim Tan^t(V)`, as the
/// generic rank of the differential of the join parametrization minus one.
pub fn tan_variety_dim(p: &Parametrization, t: u32, opts: &Options) -> Result<usize> {
    require_order(t, 1)?;
    let k = p.k();
    match opts.mode {
        Mode::Sampled => {
            let jets = Jets::new(p, t + 1);
            let mut lambdas = opts.sampler(Stream::JoinCoefficients);
            let mut best = 0;
            for u in sample_points(p, opts, opts.samples.max(1))? {
                let lambda = lambdas.nonzero_point(count_up_to(k, t));
                let ev = jets.eval(&u)?;
                best = best.max(join_differential(&ev, k, t, &lambda).rank());
            }
            Ok(best - 1)
        }
        Mode::Symbolic => Ok(symbolic_join_rank(p, t) - 1),
    }
}

/// Rank over `Q(u, lambda)`. Lower-order coefficients only add vectors that
/// already lie in the span of the `X^I`, so only `lambda_I` with `|I| = t`
/// are kept as indeterminates.
fn symbolic_join_rank(p: &Parametrization, t: u32) -> usize {
    let k = p.k();
    let top = enumerate(k, t, Enumeration::ExactOrder);
    let nvars = k + top.len();
    let jets = Jets::new(p, t + 1);
    let mut rows: Vec<Vec<Poly>> = jets
        .rows_up_to(t)
        .iter()
        .map(|r| {
            let ext: Vec<RatFunc> = r.iter().map(|f| f.extend_vars(nvars)).collect();
            clear_row_denominators(&ext)
        })
        .collect();
    let cols = p.ambient_dim() + 1;
    for j in 0..k {
        let mut acc: Vec<RatFunc> = vec![RatFunc::from_poly(Poly::zero(nvars)); cols];
        for (slot, mi) in top.iter().enumerate() {
            let lambda = RatFunc::from_poly(Poly::var(nvars, k + slot));
            for (a, x) in acc.iter_mut().zip(jets.row(&mi.raised(j))) {
                if !x.is_zero() {
                    *a = a.add(&lambda.mul(&x.extend_vars(nvars)));
                }
            }
        }
        rows.push(clear_row_denominators(&acc));
    }
    poly_rank(rows, cols)
}

/// Expected dimension, actual dimension and defect of `Tan^t(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub t: u32,
    pub d: usize,
    pub expdim: usize,
    pub tan_dim: usize,
    /// `o_t = min(k + d_t, N) - dim Tan^t(V)`.
    pub defect: i64,
}

pub fn osculating_defect(p: &Parametrization, t: u32, opts: &Options) -> Result<Defect> {
    require_order(t, 1)?;
    let d = osc_dims(p, t, opts)?[t as usize];
    let expdim = (p.k() + d).min(p.ambient_dim());
    let tan_dim = tan_variety_dim(p, t, opts)?;
    Ok(Defect { t, d, expdim, tan_dim, defect: expdim as i64 - tan_dim as i64 })
}

/// Rank of `w -> (sum_j w_j X^{I + e_j} mod T^(t))_{|I| = t}` at a point,
/// i.e. of the differential of the `t`-th Gauss map.
fn gauss_rank_at(jets: &EvaluatedJets, k: usize, t: u32) -> usize {
    let annihilator = jets.matrix(t).nullspace();
    if annihilator.is_empty() {
        return 0;
    }
    let top = enumerate(k, t, Enumeration::ExactOrder);
    let rows = (0..k)
        .map(|j| {
            top.iter()
                .flat_map(|mi| {
                    let x = jets.row(&mi.raised(j));
                    annihilator.iter().map(move |c| dot(c, x))
                })
                .collect()
        })
        .collect();
    MatrixQ::from_rows(top.len() * annihilator.len(), rows).rank()
}

/// `h`, the dimension of the image of the `t`-th Gauss map, computed as the
/// rank of its differential through the `(t+1)`-th fundamental form.
pub fn gauss_image_dim(p: &Parametrization, t: u32, opts: &Options) -> Result<usize> {
    require_order(t, 1)?;
    let k = p.k();
    match opts.mode {
        Mode::Sampled => {
            let points = generic_points(p, t, t + 1, opts.samples.max(1), opts)?;
            Ok(points.iter().map(|gp| gauss_rank_at(&gp.jets, k, t)).max().unwrap_or(0))
        }
        Mode::Symbolic => Ok(symbolic_gauss_rank(p, t)),
    }
}

fn symbolic_gauss_rank(p: &Parametrization, t: u32) -> usize {
    let k = p.k();
    let jets = Jets::new(p, t + 1);
    let rows: Vec<Vec<Poly>> = jets.rows_up_to(t).iter().map(|r| clear_row_denominators(r)).collect();
    let cols = p.ambient_dim() + 1;
    let annihilator = poly_kernel(&rows, cols, k);
    if annihilator.is_empty() {
        return 0;
    }
    let top = enumerate(k, t, Enumeration::ExactOrder);
    let matrix: Vec<Vec<Poly>> = (0..k)
        .map(|j| {
            let entries: Vec<RatFunc> = top
                .iter()
                .flat_map(|mi| {
                    let x = jets.row(&mi.raised(j));
                    annihilator.iter().map(move |c| {
                        c.iter().zip(x).fold(RatFunc::from_poly(Poly::zero(k)), |acc, (cf, xf)| {
                            if cf.is_zero() || xf.is_zero() {
                                acc
                            } else {
                                acc.add(&xf.mul(&RatFunc::from_poly(cf.clone())))
                            }
                        })
                    })
                })
                .collect();
            clear_row_denominators(&entries)
        })
        .collect();
    poly_rank(matrix, top.len() * annihilator.len())
}

/// Dimension of the `t`-th dual variety with the window it must lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDim {
    pub t: u32,
    /// `d_{t,1} = h + N - 1 - d_t`.
    pub dim: i64,
    pub lower: i64,
    pub upper: i64,
    /// `dim < N - 1 - d_t + k`.
    pub degenerate: bool,
}

pub fn dual_variety_dim(p: &Parametrization, t: u32, opts: &Options) -> Result<DualDim> {
    require_order(t, 1)?;
    let n = p.ambient_dim() as i64;
    let d = osc_dims(p, t, opts)?[t as usize] as i64;
    if d == n {
        return Err(Error::EmptyDual { t });
    }
    let h = gauss_image_dim(p, t, opts)? as i64;
    let lower = n - d - 1;
    let upper = lower + p.k() as i64;
    let dim = (h + n - 1 - d).clamp(lower, upper);
    Ok(DualDim { t, dim, lower, upper, degenerate: dim < upper })
}

/// Everything about order `t` in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub t: u32,
    pub tan_dim: usize,
    pub expdim: usize,
    pub defect: i64,
    pub h: usize,
    /// `-1` when the osculating space fills `P^N`.
    pub dual_dim: i64,
}

pub fn defect_report(p: &Parametrization, t: u32, opts: &Options) -> Result<DefectReport> {
    let defect = osculating_defect(p, t, opts)?;
    let h = gauss_image_dim(p, t, opts)?;
    let dual_dim = match dual_variety_dim(p, t, opts) {
        Ok(dd) => dd.dim,
        Err(Error::EmptyDual { .. }) => -1,
        Err(e) => return Err(e),
    };
    Ok(DefectReport { t, tan_dim: defect.tan_dim, expdim: defect.expdim, defect: defect.defect, h, dual_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Fundamental forms of small dimension force an osculating defect.
    #[serde(rename = "A")]
    A,
    /// Defect versus the rank of the Jacobian of the next fundamental form.
    #[serde(rename = "B")]
    B,
    /// The partials of `|I^t|` lie in `|I^{t-1}|`.
    #[serde(rename = "chain")]
    JacobianChain,
    /// The tangent space of `Tan^{t-1}(V)` lies in the `t`-th osculating space.
    #[serde(rename = "lemma")]
    TangentLemma,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::A => "A",
            Theorem::B => "B",
            Theorem::JacobianChain => "chain",
            Theorem::TangentLemma => "lemma",
        })
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Theorem::A),
            "B" | "b" => Ok(Theorem::B),
            "chain" => Ok(Theorem::JacobianChain),
            "lemma" => Ok(Theorem::TangentLemma),
            other => Err(format!("unknown theorem `{other}` (expected A, B, chain or lemma)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub t: u32,
    pub applicable: bool,
    /// `None` when not applicable.
    pub pass: Option<bool>,
    pub inputs: BTreeMap<String, i64>,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    fn new(theorem: Theorem, t: u32) -> Self {
        TheoremVerdict { theorem, t, applicable: false, pass: None, inputs: BTreeMap::new(), notes: Vec::new() }
    }

    fn input(&mut self, key: &str, value: impl TryInto<i64>) {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.inputs.insert(key.to_string(), v);
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.inputs.get(key).copied()
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    pub fn passed(&self) -> bool {
        self.pass == Some(true)
    }
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.pass {
            None => "not applicable",
            Some(true) => "pass",
            Some(false) => "FAIL",
        };
        write!(f, "theorem {} at t = {}: {status}", self.theorem, self.t)
    }
}

/// At generic points: the differential of the order-`(t-1)` join lies in
/// the `t`-th osculating space, and `dim Tan^{t-1}(V) <= d_t`.
pub fn tangent_lemma_check(p: &Parametrization, t: u32, opts: &Options) -> Result<TheoremVerdict> {
    require_order(t, 2)?;
    let k = p.k();
    let mut v = TheoremVerdict::new(Theorem::TangentLemma, t);
    v.applicable = true;
    let points = generic_points(p, t, t, opts.samples.max(1), opts)?;
    let mut lambdas = opts.sampler(Stream::JoinCoefficients);
    let mut inclusion = true;
    for gp in &points {
        let lambda = lambdas.nonzero_point(count_up_to(k, t - 1));
        let tangent = join_differential(&gp.jets, k, t - 1, &lambda);
        let osc = gp.jets.matrix(t);
        if tangent.vstack(&osc).rank() != osc.rank() {
            inclusion = false;
        }
    }
    let tan_dim = tan_variety_dim(p, t - 1, opts)?;
    let d_t = osc_dims(p, t, opts)?[t as usize];
    v.input("points_checked", points.len());
    v.input("tan_dim_prev", tan_dim);
    v.input("d_t", d_t);
    if !inclusion {
        v.notes.push("join differential leaves the osculating space at a sampled point".into());
    }
    v.pass = Some(inclusion && tan_dim <= d_t);
    Ok(v)
}

fn fundamental_forms_at(p: &Parametrization, t: u32, opts: &Options) -> Result<FormSystem> {
    let gp = crate::jets::generic_point(p, t, t, opts)?;
    Ok(fundamental_form_from_jets(&gp.jets, p.k(), t))
}

/// If `|I^t|` has projective dimension `k - ell - 1` with `ell > 0`, then
/// `o_{t-1} >= ell` and the `t`-th Gauss image has dimension `h <= k - ell`.
///
/// The defect bound needs the expected dimension `k + d_{t-1}` of
/// `Tan^{t-1}(V)` to fit in `P^N`; outside that range it is reported in the
/// notes but not judged.
pub fn check_theorem_a(p: &Parametrization, t: u32, opts: &Options) -> Result<TheoremVerdict> {
    require_order(t, 2)?;
    let (k, n) = (p.k() as i64, p.ambient_dim() as i64);
    let mut v = TheoremVerdict::new(Theorem::A, t);
    let form = fundamental_forms_at(p, t, opts)?;
    let delta = form.projdim();
    let ell = k - 1 - delta;
    let d = osc_dims(p, t, opts)?;
    let (d_prev, d_t) = (d[t as usize - 1] as i64, d[t as usize] as i64);
    v.input("k", k);
    v.input("N", n);
    v.input("Delta", delta);
    v.input("ell", ell);
    v.input("d_prev", d_prev);
    v.input("d_t", d_t);
    if ell <= 0 {
        v.notes.push(format!("Delta_{t} = {delta} = k - 1 gives ell = {ell}; hypothesis ell > 0 not met"));
        return Ok(v);
    }
    v.applicable = true;
    let defect = osculating_defect(p, t - 1, opts)?;
    let h = gauss_image_dim(p, t, opts)? as i64;
    v.input("defect_prev", defect.defect);
    v.input("expdim_prev", defect.expdim);
    v.input("h", h);

    let mut pass = true;
    let defect_ok = defect.defect >= ell;
    if k + d_prev <= n {
        v.input("defect_bound_checked", 1);
        pass &= defect_ok;
    } else {
        v.input("defect_bound_checked", 0);
        v.notes.push(format!(
            "k + d_{} = {} exceeds N = {n}: expected dimension of Tan^{} is truncated, defect bound not judged (o = {} {} ell = {ell})",
            t - 1,
            k + d_prev,
            t - 1,
            defect.defect,
            if defect_ok { ">=" } else { "<" },
        ));
    }
    pass &= h <= k - ell;

    if k == 1 {
        let place = match d_prev {
            1 => "a line".to_string(),
            2 => "a plane curve".to_string(),
            m => format!("a curve spanning at most P^{m}"),
        };
        v.notes.push(format!("k = 1: the curve is contained in a P^{d_prev}, so V is {place}"));
    } else if ell == k {
        v.notes.push(format!("ell = k: V is contained in a P^{d_prev}"));
    } else if ell == k - 1 && t == 2 {
        match h {
            0 => v.notes.push(format!("hypersurface case: V is a hypersurface in a P^{}", k + 1)),
            1 => v.notes.push(format!("developable bundle case: V is a developable P^{}-bundle", k - 1)),
            _ => {}
        }
    }
    v.pass = Some(pass);
    Ok(v)
}

/// `o_t = ell > 0` together with `Delta_{t+1} >= k - ell` should match the
/// Jacobian of `|I^{t+1}|` having rank `k - ell`. Both directions are only
/// judged under the dimension hypothesis.
pub fn check_theorem_b(p: &Parametrization, t: u32, opts: &Options) -> Result<TheoremVerdict> {
    require_order(t, 1)?;
    let k = p.k() as i64;
    let mut v = TheoremVerdict::new(Theorem::B, t);
    let ell = osculating_defect(p, t, opts)?.defect;
    let form = fundamental_forms_at(p, t + 1, opts)?;
    let delta = form.projdim();
    let jr = jacobian(&form, opts).generic_rank as i64;
    let ell_rev = k - jr;
    v.input("k", k);
    v.input("ell", ell);
    v.input("Delta_next", delta);
    v.input("jacobian_rank", jr);
    v.input("ell_from_rank", ell_rev);
    v.input("affine_gate", i64::from(delta + 1 >= k - ell));

    let forward_gate = ell > 0 && delta >= k - ell;
    let reverse_gate = delta >= k - ell_rev;
    v.input("forward_gate", i64::from(forward_gate));
    v.input("reverse_gate", i64::from(reverse_gate));
    let mut pass = true;
    if forward_gate {
        let ok = jr == k - ell;
        v.input("forward_pass", i64::from(ok));
        pass &= ok;
    }
    if reverse_gate {
        let ok = ell == ell_rev;
        v.input("reverse_pass", i64::from(ok));
        pass &= ok;
    }
    v.applicable = forward_gate || reverse_gate;
    if v.applicable {
        v.pass = Some(pass);
    } else if ell > 0 {
        v.notes.push(format!(
            "o_{t} = {ell} but Delta_{} = {delta} < k - ell = {}: dimension hypothesis fails{}",
            t + 1,
            k - ell,
            if jr == k - ell { " although the Jacobian has rank k - ell" } else { "" }
        ));
    } else {
        v.notes.push(format!("o_{t} = 0 and Delta_{} = {delta} < Jacobian rank {jr}", t + 1));
    }
    Ok(v)
}

/// The partial derivatives of `|I^t|` lie in `|I^{t-1}|`, checked at up to
/// `opts.samples` generic points.
pub fn check_jacobian_chain(p: &Parametrization, t: u32, opts: &Options) -> Result<TheoremVerdict> {
    require_order(t, 2)?;
    let k = p.k();
    let mut v = TheoremVerdict::new(Theorem::JacobianChain, t);
    v.applicable = true;
    let points = generic_points(p, t, t, opts.samples.max(1), opts)?;
    let mut pass = true;
    let mut proper = false;
    for gp in &points {
        let current = fundamental_form_from_jets(&gp.jets, k, t);
        let previous = fundamental_form_from_jets(&gp.jets, k, t - 1);
        let partials = partials_system(&current);
        pass &= contains(&partials, &previous)?;
        proper |= previous.len() < count_exact(k, t - 1);
        v.input("Delta_t", current.projdim());
        v.input("Delta_prev", previous.projdim());
        v.input("partials_dim", partials.projdim());
    }
    v.input("points_checked", points.len());
    v.input("proper_subsystem", i64::from(proper));
    if proper {
        v.notes.push(format!("|I^{}| is a proper subsystem of all forms of degree {}", t - 1, t - 1));
    }
    v.pass = Some(pass);
    Ok(v)
}

pub fn check(p: &Parametrization, theorem: Theorem, t: u32, opts: &Options) -> Result<TheoremVerdict> {
    match theorem {
        Theorem::A => check_theorem_a(p, t, opts),
        Theorem::B => check_theorem_b(p, t, opts),
        Theorem::JacobianChain => check_jacobian_chain(p, t, opts),
        Theorem::TangentLemma => tangent_lemma_check(p, t, opts),
    }
}

/// Multi-index helper for callers that build `X^{I + e_j}` lists.
pub fn raised_indices(k: usize, t: u32, j: usize) -> Vec<MultiIndex> {
    enumerate(k, t, Enumeration::ExactOrder).iter().map(|mi| mi.raised(j)).collect()
}

//! Fundamental forms as linear systems of forms, apolarity and Jacobians.
//!
//! A degree-`t` form in `k` variables `v_1 ... v_k` is stored as its
//! coefficient vector over the exact-order multi-indices. Apolarity is the
//! plain dot product of these vectors, with no multinomial weights.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::bareiss::{determinant, poly_rank};
use crate::exact::multi_index::count_exact;
use crate::exact::{dot, enumerate, q, Enumeration, MatrixQ, Poly, Rational};
use crate::jets::{ensure_generic_at, EvaluatedJets, LaplaceSystem, Parametrization};
use crate::sampling::{Mode, Options, Stream};

/// One degree-`t` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub degree: u32,
    pub vars: usize,
    pub coeffs: Vec<Rational>,
}

impl Form {
    pub fn from_poly(degree: u32, p: &Poly) -> Result<Form> {
        if !p.is_homogeneous_of(degree) {
            return Err(Error::DegreeMismatch(format!("{p} is not a form of degree {degree}")));
        }
        Ok(Form { degree, vars: p.nvars(), coeffs: p.form_coefficients(degree) })
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_form_coefficients(self.vars, self.degree, &self.coeffs)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_expr("v"))
    }
}

/// A linear system of degree-`t` forms, stored as the reduced row echelon
/// basis of its coefficient row space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormSystem {
    degree: u32,
    vars: usize,
    basis: MatrixQ,
}

impl FormSystem {
    pub fn new(degree: u32, vars: usize, rows: Vec<Vec<Rational>>) -> Self {
        let cols = count_exact(vars, degree);
        FormSystem { degree, vars, basis: MatrixQ::from_rows(cols, rows).row_space() }
    }

    pub fn empty(degree: u32, vars: usize) -> Self {
        FormSystem::new(degree, vars, Vec::new())
    }

    /// All forms of the given degree.
    pub fn full(degree: u32, vars: usize) -> Self {
        FormSystem::new(degree, vars, MatrixQ::identity(count_exact(vars, degree)).row_vecs())
    }

    pub fn from_polys(degree: u32, vars: usize, polys: &[Poly]) -> Result<Self> {
        let mut rows = Vec::with_capacity(polys.len());
        for p in polys {
            if p.nvars() != vars {
                return Err(Error::DegreeMismatch(format!("{p} has {} variables, expected {vars}", p.nvars())));
            }
            rows.push(Form::from_poly(degree, p)?.coeffs);
        }
        Ok(FormSystem::new(degree, vars, rows))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Number of independent forms.
    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    /// Projective dimension; `-1` for the empty system.
    pub fn projdim(&self) -> i64 {
        self.len() as i64 - 1
    }

    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn forms(&self) -> Vec<Form> {
        (0..self.len())
            .map(|i| Form { degree: self.degree, vars: self.vars, coeffs: self.basis.row(i).to_vec() })
            .collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.forms().iter().map(Form::to_poly).collect()
    }

    /// The same forms written in the Taylor convention, each coefficient
    /// multiplied by `t! / I!`.
    pub fn multinomially_weighted(&self) -> FormSystem {
        let weights: Vec<Rational> = enumerate(self.vars, self.degree, Enumeration::ExactOrder)
            .iter()
            .map(|mi| {
                let t_fact: u64 = (1..=self.degree as u64).product();
                q((t_fact / mi.factorial()) as i64)
            })
            .collect();
        let rows = self
            .basis
            .row_vecs()
            .into_iter()
            .map(|r| r.iter().zip(&weights).map(|(a, w)| a * w).collect())
            .collect();
        FormSystem::new(self.degree, self.vars, rows)
    }

    fn check_compatible(&self, other: &FormSystem) -> Result<()> {
        if self.degree != other.degree || self.vars != other.vars {
            return Err(Error::DegreeMismatch(format!(
                "degree {} in {} variables vs degree {} in {} variables",
                self.degree, self.vars, other.degree, other.vars
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FormSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self.forms().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", forms.join(", "))
    }
}

/// `|I^t|` from jets evaluated at a point: for every covector `c`
/// annihilating the order-`(t-1)` osculating space, the form
/// `sum_{|I| = t} (c . X^I) v^I`.
pub fn fundamental_form_from_jets(jets: &EvaluatedJets, vars: usize, t: u32) -> FormSystem {
    assert!(t >= 1 && jets.order() >= t);
    let annihilator = jets.matrix(t - 1).nullspace();
    let top = enumerate(vars, t, Enumeration::ExactOrder);
    let tops: Vec<&[Rational]> = top.iter().map(|mi| jets.row(mi)).collect();
    let rows = annihilator
        .iter()
        .map(|c| tops.iter().map(|x| dot(c, x)).collect())
        .collect();
    FormSystem::new(t, vars, rows)
}

/// The `t`-th fundamental form at `u`, which must be generic for the
/// osculating spaces of orders `t - 1` and `t`.
pub fn fundamental_form(p: &Parametrization, t: u32, u: &[Rational], opts: &Options) -> Result<FormSystem> {
    if t == 0 {
        return Err(Error::InvalidOrder(t));
    }
    let jets = ensure_generic_at(p, u, t, t, opts)?;
    Ok(fundamental_form_from_jets(&jets, p.k(), t))
}

/// Forms `sum_{|I| = s} E_I v^I` of the top-order parts of a Laplace system.
pub fn associated_system(l: &LaplaceSystem) -> FormSystem {
    FormSystem::new(l.order, l.vars, l.top_parts())
}

/// `sum_I a_I b_I`.
pub fn apolar_pair(f: &Form, g: &Form) -> Result<Rational> {
    if f.degree != g.degree || f.vars != g.vars {
        return Err(Error::DegreeMismatch(format!(
            "cannot pair degree {} in {} variables with degree {} in {} variables",
            f.degree, f.vars, g.degree, g.vars
        )));
    }
    Ok(dot(&f.coeffs, &g.coeffs))
}

/// All forms apolar to every member of `s`.
pub fn apolar_complement(s: &FormSystem) -> FormSystem {
    if s.is_empty() {
        return FormSystem::full(s.degree, s.vars);
    }
    FormSystem::new(s.degree, s.vars, s.basis.nullspace())
}

/// Span of all first partial derivatives of the members of `s`.
pub fn partials_system(s: &FormSystem) -> FormSystem {
    let deg = s.degree.saturating_sub(1);
    if s.degree == 0 {
        return FormSystem::empty(0, s.vars);
    }
    let rows = s
        .polys()
        .iter()
        .flat_map(|f| (0..s.vars).map(move |g| f.diff(g).form_coefficients(deg)))
        .collect();
    FormSystem::new(deg, s.vars, rows)
}

/// Whether every form of `a` lies in the span of `b`.
pub fn contains(a: &FormSystem, b: &FormSystem) -> Result<bool> {
    a.check_compatible(b)?;
    if a.is_empty() {
        return Ok(true);
    }
    Ok(a.basis.vstack(&b.basis).rank() == b.len())
}

/// Jacobian matrix of a system of forms with its generic rank and the span
/// of its maximal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianData {
    /// `matrix[i][g] = d f_i / d v_g`.
    pub matrix: Vec<Vec<Poly>>,
    pub generic_rank: usize,
    pub jacobian_system: FormSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianSummary {
    pub generators: usize,
    pub generic_rank: usize,
    pub minors_dim: i64,
}

impl JacobianData {
    pub fn summary(&self) -> JacobianSummary {
        JacobianSummary {
            generators: self.matrix.len(),
            generic_rank: self.generic_rank,
            minors_dim: self.jacobian_system.projdim(),
        }
    }
}

pub fn jacobian_matrix(s: &FormSystem) -> Vec<Vec<Poly>> {
    s.polys().iter().map(|f| (0..s.vars).map(|g| f.diff(g)).collect()).collect()
}

/// Generic rank of a polynomial matrix in `vars` variables.
pub fn generic_rank(matrix: &[Vec<Poly>], cols: usize, vars: usize, opts: &Options) -> usize {
    if matrix.is_empty() || cols == 0 {
        return 0;
    }
    match opts.mode {
        Mode::Symbolic => poly_rank(matrix.to_vec(), cols),
        Mode::Sampled => {
            let mut sampler = opts.sampler(Stream::FormVariables);
            (0..opts.samples.max(1))
                .map(|_| {
                    let v = sampler.point(vars);
                    let rows = matrix.iter().map(|r| r.iter().map(|f| f.eval(&v)).collect()).collect();
                    MatrixQ::from_rows(cols, rows).rank()
                })
                .max()
                .unwrap_or(0)
        }
    }
}

pub fn jacobian(s: &FormSystem, opts: &Options) -> JacobianData {
    let matrix = jacobian_matrix(s);
    let rank = generic_rank(&matrix, s.vars, s.vars, opts);
    let minors_degree = s.degree.saturating_sub(1) * rank as u32;
    let jacobian_system = if rank == 0 {
        FormSystem::empty(minors_degree, s.vars)
    } else {
        let rows: Vec<Vec<Rational>> = subsets(matrix.len(), rank)
            .into_iter()
            .flat_map(|rs| subsets(s.vars, rank).into_iter().map(move |cs| (rs.clone(), cs)))
            .filter_map(|(rs, cs)| {
                let minor: Vec<Vec<Poly>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| matrix[i][j].clone()).collect()).collect();
                let det = determinant(minor)?;
                (!det.is_zero()).then(|| det.form_coefficients(minors_degree))
            })
            .collect();
        FormSystem::new(minors_degree, s.vars, rows)
    };
    JacobianData { matrix, generic_rank: rank, jacobian_system }
}

/// All `r`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Rational zero test on a whole pairing table.
pub fn all_pairings_vanish(a: &FormSystem, b: &FormSystem) -> Result<bool> {
    for f in a.forms() {
        for g in b.forms() {
            if !apolar_pair(&f, &g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(vars: usize, i: usize) -> Poly {
        Poly::var(vars, i)
    }

    fn sys(degree: u32, vars: usize, polys: &[Poly]) -> FormSystem {
        FormSystem::from_polys(degree, vars, polys).unwrap()
    }

    #[test]
    fn pairings() {
        let f = Form::from_poly(2, &v(2, 0).pow(2)).unwrap();
        let g = Form::from_poly(2, &v(2, 1).pow(2)).unwrap();
        assert_eq!(apolar_pair(&f, &g).unwrap(), q(0));
        let a = Form::from_poly(2, &(&v(2, 0).pow(2) + &v(2, 1).pow(2))).unwrap();
        let b = Form::from_poly(2, &(&v(2, 0).pow(2) - &v(2, 1).pow(2))).unwrap();
        assert_eq!(apolar_pair(&a, &b).unwrap(), q(0));
        let lin = Form::from_poly(1, &v(2, 0)).unwrap();
        assert!(matches!(apolar_pair(&a, &lin), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn complements() {
        let full = apolar_complement(&FormSystem::empty(2, 2));
        assert_eq!(full.len(), 3);
        let s = sys(2, 3, &[v(3, 0).pow(2), &v(3, 0) * &v(3, 1), v(3, 1).pow(2)]);
        let c = apolar_complement(&s);
        assert_eq!(c, sys(2, 3, &[&v(3, 0) * &v(3, 2), &v(3, 1) * &v(3, 2), v(3, 2).pow(2)]));
        assert_eq!(s.len() + c.len(), 6);
    }

    #[test]
    fn containment() {
        let any = sys(2, 3, &[v(3, 2).pow(2)]);
        assert!(contains(&FormSystem::empty(2, 3), &any).unwrap());
        let a = sys(2, 3, &[v(3, 0).pow(2)]);
        let b = sys(2, 3, &[v(3, 0).pow(2), &v(3, 0) * &v(3, 1)]);
        assert!(contains(&a, &b).unwrap());
        let c = sys(2, 3, &[&v(3, 0) * &v(3, 2)]);
        let quadrics12 = sys(2, 3, &[v(3, 0).pow(2), &v(3, 0) * &v(3, 1), v(3, 1).pow(2)]);
        assert!(!contains(&c, &quadrics12).unwrap());
        assert!(contains(&a, &FormSystem::empty(3, 3)).is_err());
    }

    #[test]
    fn jacobian_ranks() {
        for opts in [Options::default(), Options::symbolic()] {
            let single = sys(2, 2, &[v(2, 0).pow(2)]);
            let jd = jacobian(&single, &opts);
            assert_eq!(jd.matrix, vec![vec![v(2, 0).scale(&q(2)), Poly::zero(2)]]);
            assert_eq!(jd.generic_rank, 1);
            let cone = sys(2, 3, &[v(3, 0).pow(2), &v(3, 0) * &v(3, 1), v(3, 1).pow(2)]);
            assert_eq!(jacobian(&cone, &opts).generic_rank, 2);
            assert_eq!(jacobian(&FormSystem::full(2, 2), &opts).generic_rank, 2);
            assert_eq!(jacobian(&FormSystem::empty(2, 2), &opts).generic_rank, 0);
        }
    }

    #[test]
    fn jacobian_minors_span() {
        // v1^2, v2^2: Jacobian diag(2 v1, 2 v2), single maximal minor 4 v1 v2.
        let s = sys(2, 2, &[v(2, 0).pow(2), v(2, 1).pow(2)]);
        let jd = jacobian(&s, &Options::default());
        assert_eq!(jd.jacobian_system, sys(2, 2, &[&v(2, 0) * &v(2, 1)]));
        assert_eq!(jd.jacobian_system.degree(), 2);
    }

    #[test]
    fn partials_of_cubics() {
        let s = sys(3, 2, &[v(2, 0).pow(3)]);
        assert_eq!(partials_system(&s), sys(2, 2, &[v(2, 0).pow(2)]));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}

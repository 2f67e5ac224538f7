//! Analysis reports: every per-order integer plus theorem verdicts.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::document::InputDocument;
use crate::defects::{self, Theorem, TheoremVerdict};
use crate::error::{Error, Result};
use crate::forms::fundamental_form_from_jets;
use crate::jets::{check_immersion, expected_dims, generic_point, global_laplace_basis, laplace_basis_from_jets, osc_dims, Parametrization};
use crate::sampling::{Mode, Options};

pub const SCHEMA: &str = "osculant.report.v1";
pub const MAX_ORDER_CEILING: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub samples: usize,
    pub coord_bound: u64,
    pub mode: Mode,
    pub max_order: u32,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub name: String,
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    /// Absent when a coordinate has a denominator.
    pub coordinates: Option<Vec<String>>,
}

/// One order `t`. A quantity that could not be computed is `None` and the
/// reason is listed in `errors`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBlock {
    pub t: u32,
    pub d: Option<i64>,
    pub e: Option<i64>,
    pub k_t: i64,
    pub delta_pointwise: Option<i64>,
    pub delta_global: Option<i64>,
    #[serde(rename = "Delta")]
    pub big_delta: Option<i64>,
    pub tan_dim: Option<i64>,
    pub defect: Option<i64>,
    pub h: Option<i64>,
    pub dual_dim: Option<i64>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremError {
    pub theorem: Theorem,
    pub t: u32,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub input: InputEcho,
    pub metadata: RunMetadata,
    pub orders: Vec<OrderBlock>,
    pub theorems: Vec<TheoremVerdict>,
    pub theorem_errors: Vec<TheoremError>,
    /// Differences against a symbolic-mode rerun, when one was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_mismatches: Option<Vec<String>>,
}

fn keep<T>(slot: &mut Option<i64>, errors: &mut Vec<String>, what: &str, r: Result<T>, f: impl FnOnce(T) -> i64) {
    match r {
        Ok(v) => *slot = Some(f(v)),
        Err(e) => errors.push(format!("{what}: {e}")),
    }
}

/// Theorems judged at order `t` of a report that stops at `t_max`.
pub fn theorems_at(t: u32, t_max: u32) -> Vec<Theorem> {
    let mut out = Vec::new();
    if t >= 2 {
        out.push(Theorem::A);
    }
    if t < t_max {
        out.push(Theorem::B);
    }
    if t >= 2 {
        out.push(Theorem::JacobianChain);
        out.push(Theorem::TangentLemma);
    }
    out
}

pub fn run_report(p: &Parametrization, t_max: u32, opts: &Options) -> Result<Report> {
    if t_max == 0 || t_max > MAX_ORDER_CEILING {
        return Err(Error::InvalidOrder(t_max));
    }
    check_immersion(p, opts)?;
    let (k, n) = (p.k(), p.ambient_dim());
    let dims = osc_dims(p, t_max, opts);
    let point = generic_point(p, t_max, t_max, opts);

    let mut orders = Vec::new();
    for t in 1..=t_max {
        let mut b = OrderBlock { t, k_t: crate::exact::binomial(k + t as usize, t as usize) as i64 - 1, ..Default::default() };
        let mut errors = Vec::new();
        match &dims {
            Ok(d) => {
                b.d = Some(d[t as usize] as i64);
                b.e = Some(expected_dims(k, n, d[t as usize - 1], t).expected as i64);
            }
            Err(e) => errors.push(format!("osculating dimension: {e}")),
        }
        match &point {
            Ok(gp) => {
                let laplace = laplace_basis_from_jets(&gp.jets, k, t, &gp.point);
                b.delta_pointwise = Some(laplace.count() as i64);
                b.big_delta = Some(fundamental_form_from_jets(&gp.jets, k, t).projdim());
            }
            Err(e) => errors.push(format!("generic point: {e}")),
        }
        if p.is_polynomial() {
            keep(&mut b.delta_global, &mut errors, "global Laplace equations", global_laplace_basis(p, t), |l| {
                l.count() as i64
            });
        }
        match defects::osculating_defect(p, t, opts) {
            Ok(o) => {
                b.tan_dim = Some(o.tan_dim as i64);
                b.defect = Some(o.defect);
            }
            Err(e) => errors.push(format!("osculating defect: {e}")),
        }
        keep(&mut b.h, &mut errors, "Gauss image", defects::gauss_image_dim(p, t, opts), |h| h as i64);
        match defects::dual_variety_dim(p, t, opts) {
            Ok(dd) => b.dual_dim = Some(dd.dim),
            Err(Error::EmptyDual { .. }) => b.dual_dim = Some(-1),
            Err(e) => errors.push(format!("dual variety: {e}")),
        }
        b.errors = errors;
        orders.push(b);
    }

    let mut theorems = Vec::new();
    let mut theorem_errors = Vec::new();
    for t in 1..=t_max {
        for theorem in theorems_at(t, t_max) {
            match defects::check(p, theorem, t, opts) {
                Ok(v) => theorems.push(v),
                Err(e) => theorem_errors.push(TheoremError { theorem, t, error: e.to_string() }),
            }
        }
    }

    let echo = InputDocument::from_parametrization(p);
    Ok(Report {
        schema: SCHEMA.to_string(),
        input: InputEcho { name: p.name().to_string(), k, n, coordinates: echo.map(|d| d.coordinates) },
        metadata: RunMetadata {
            seed: opts.seed,
            samples: opts.samples,
            coord_bound: opts.coord_bound,
            mode: opts.mode,
            max_order: t_max,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        orders,
        theorems,
        theorem_errors,
        oracle_mismatches: None,
    })
}

/// Runs the report and recomputes it in symbolic mode, listing every
/// integer on which the two disagree.
pub fn run_report_cross_checked(p: &Parametrization, t_max: u32, opts: &Options) -> Result<Report> {
    let mut report = run_report(p, t_max, opts)?;
    let oracle = if opts.mode == Mode::Symbolic {
        report.clone()
    } else {
        run_report(p, t_max, &opts.clone().with_mode(Mode::Symbolic))?
    };
    report.oracle_mismatches = Some(integer_mismatches(&report, &oracle));
    Ok(report)
}

/// Every per-order integer and theorem outcome, keyed for comparison.
pub fn integers(r: &Report) -> Vec<(String, Option<i64>)> {
    let mut out = Vec::new();
    for b in &r.orders {
        let t = b.t;
        for (name, v) in [
            ("d", b.d),
            ("e", b.e),
            ("delta", b.delta_pointwise),
            ("delta_global", b.delta_global),
            ("Delta", b.big_delta),
            ("tan_dim", b.tan_dim),
            ("o", b.defect),
            ("h", b.h),
            ("dual_dim", b.dual_dim),
        ] {
            out.push((format!("{name}_{t}"), v));
        }
    }
    for v in &r.theorems {
        let pass = v.pass.map(i64::from);
        out.push((format!("theorem_{}_{}", v.theorem, v.t), pass));
    }
    out
}

pub fn integer_mismatches(a: &Report, b: &Report) -> Vec<String> {
    let (ia, ib) = (integers(a), integers(b));
    let mut out: Vec<String> = ia
        .iter()
        .zip(&ib)
        .filter(|(x, y)| x != y)
        .map(|((name, x), (_, y))| format!("{name}: {x:?} vs {y:?}"))
        .collect();
    if ia.len() != ib.len() {
        out.push(format!("{} vs {} entries", ia.len(), ib.len()));
    }
    out
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn order(&self, t: u32) -> Option<&OrderBlock> {
        self.orders.iter().find(|b| b.t == t)
    }

    pub fn any_theorem_failed(&self) -> bool {
        self.theorems.iter().any(TheoremVerdict::failed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.metadata;
        let _ = writeln!(s, "{} (k = {}, N = {})", self.input.name, self.input.k, self.input.n);
        let _ = writeln!(
            s,
            "mode {}  seed {}  samples {}  coord-bound {}  version {}",
            m.mode, m.seed, m.samples, m.coord_bound, m.version
        );
        s.push('\n');
        let header = ["t", "d", "e", "k_t", "delta", "delta_g", "Delta", "tan", "o", "h", "dual"];
        let rows: Vec<Vec<String>> = self
            .orders
            .iter()
            .map(|b| {
                let cell = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
                vec![
                    b.t.to_string(),
                    cell(b.d),
                    cell(b.e),
                    b.k_t.to_string(),
                    cell(b.delta_pointwise),
                    cell(b.delta_global),
                    cell(b.big_delta),
                    cell(b.tan_dim),
                    cell(b.defect),
                    cell(b.h),
                    cell(b.dual_dim),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|j| rows.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap())
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(s, "{}", line(header.to_vec()));
        for r in &rows {
            let _ = writeln!(s, "{}", line(r.iter().map(String::as_str).collect()));
        }
        for b in &self.orders {
            for e in &b.errors {
                let _ = writeln!(s, "t = {}: error: {e}", b.t);
            }
        }
        if !self.theorems.is_empty() || !self.theorem_errors.is_empty() {
            s.push('\n');
        }
        for v in &self.theorems {
            let _ = writeln!(s, "{v}");
            for note in &v.notes {
                let _ = writeln!(s, "    {note}");
            }
        }
        for e in &self.theorem_errors {
            let _ = writeln!(s, "theorem {} at t = {}: error: {}", e.theorem, e.t, e.error);
        }
        if let Some(mm) = &self.oracle_mismatches {
            if mm.is_empty() {
                let _ = writeln!(s, "\nsymbolic cross-check: all integers agree");
            } else {
                let _ = writeln!(s, "\nsymbolic cross-check: {} mismatches", mm.len());
                for x in mm {
                    let _ = writeln!(s, "    {x}");
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;

    #[test]
    fn linear_orders() {
        let p = catalog_get("linear(3,5)").unwrap().parametrization;
        let r = run_report(&p, 3, &Options::default()).unwrap();
        assert_eq!(r.schema, SCHEMA);
        for t in 2..=3 {
            let b = r.order(t).unwrap();
            assert_eq!(b.big_delta, Some(-1));
            assert_eq!(b.d, Some(3));
        }
        assert!(r.orders.iter().all(|b| b.errors.is_empty()));
    }

    #[test]
    fn deterministic_and_round_trips() {
        let p = catalog_get("cone_rnc4").unwrap().parametrization;
        let opts = Options::default().with_seed(7);
        let a = run_report(&p, 2, &opts).unwrap().to_json();
        let b = run_report(&p, 2, &opts).unwrap().to_json();
        assert_eq!(a, b);
        assert_eq!(Report::from_json(&a).unwrap().to_json(), a);
    }

    #[test]
    fn order_ceiling() {
        let p = catalog_get("rnc(3)").unwrap().parametrization;
        assert_eq!(run_report(&p, 0, &Options::default()), Err(Error::InvalidOrder(0)));
        assert_eq!(run_report(&p, 7, &Options::default()), Err(Error::InvalidOrder(7)));
    }

    #[test]
    fn text_table_has_one_row_per_order() {
        let p = catalog_get("rnc(3)").unwrap().parametrization;
        let text = run_report(&p, 3, &Options::default()).unwrap().to_text();
        assert!(text.contains("delta_g"));
        assert!(text.lines().any(|l| l.trim_start().starts_with("3 ")));
    }
}

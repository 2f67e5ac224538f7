//! Acceptance suite. Prints one PASS/FAIL line per criterion (regression rows
//! and identity sub-checks get a line each) and exits non-zero on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use osculant::cli::report::{integer_mismatches, run_report};
use osculant::defects::{check, check_jacobian_chain, dual_variety_dim, tan_variety_dim, Theorem, TheoremVerdict};
use osculant::exact::multi_index::count_exact;
use osculant::exact::q;
use osculant::forms::{apolar_complement, apolar_pair, associated_system, fundamental_form_from_jets};
use osculant::jets::{expected_dims, generic_point, laplace_basis_from_jets, osc_dims};
use osculant::{catalog_get, catalog_names, Options, Parametrization};

use common::{invariant_integers, invertible, unimodular};

#[derive(Default)]
struct Suite {
    failed: Vec<String>,
}

impl Suite {
    fn report(&mut self, id: &str, problems: Vec<String>, elapsed: Duration) {
        let secs = elapsed.as_secs_f64();
        if problems.is_empty() {
            println!("PASS  {id}  ({secs:.2}s)");
        } else {
            println!("FAIL  {id}  ({secs:.2}s)");
            for p in &problems {
                println!("        {p}");
            }
            self.failed.push(id.to_string());
        }
    }

    fn run(&mut self, id: &str, limit: Option<Duration>, f: impl FnOnce() -> Vec<String>) {
        let start = Instant::now();
        let mut problems = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                problems.push(format!("took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()));
            }
        }
        self.report(id, problems, elapsed);
    }
}

/// Accumulates `label: got X, expected Y` mismatches.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn eq(&mut self, label: &str, got: impl Into<Option<i64>>, want: i64) {
        let got = got.into();
        if got != Some(want) {
            self.0.push(format!("{label}: got {got:?}, expected {want}"));
        }
    }

    fn truth(&mut self, label: &str, ok: bool) {
        if !ok {
            self.0.push(label.to_string());
        }
    }

    fn err(&mut self, label: &str, e: impl std::fmt::Display) {
        self.0.push(format!("{label}: {e}"));
    }
}

fn entry(name: &str) -> Parametrization {
    catalog_get(name).expect("catalog entry").parametrization
}

fn verdict(p: &Parametrization, theorem: Theorem, t: u32, opts: &Options, c: &mut Checks) -> Option<TheoremVerdict> {
    match check(p, theorem, t, opts) {
        Ok(v) => Some(v),
        Err(e) => {
            c.err(&format!("theorem {theorem} at t = {t}"), e);
            None
        }
    }
}

/// Symbolic-mode row: the integers of `invariant_integers` up to `t_max`.
fn row(name: &str, t_max: u32, body: impl FnOnce(&Parametrization, &BTreeMap<String, i64>, &Options, &mut Checks)) -> Vec<String> {
    let p = entry(name);
    let opts = Options::symbolic();
    let mut c = Checks::default();
    match invariant_integers(&p, t_max, &opts) {
        Ok(ints) => body(&p, &ints, &opts, &mut c),
        Err(e) => c.err("engine", e),
    }
    c.0
}

fn regression(s: &mut Suite) {
    let limit = Some(Duration::from_secs(10));
    s.run("1 regression linear(3,5)", limit, || {
        row("linear(3,5)", 4, |_, v, _, c| {
            for t in 1..=4 {
                c.eq(&format!("d_{t}"), v.get(&format!("d_{t}")).copied(), 3);
            }
            c.eq("Delta_2", v.get("Delta_2").copied(), -1);
            c.eq("delta_2", v.get("delta_2").copied(), 6);
            c.eq("o_1", v.get("o_1").copied(), 0);
        })
    });
    s.run("1 regression rnc(4)", limit, || {
        row("rnc(4)", 5, |_, v, _, c| {
            for (t, d) in [(1, 1), (2, 2), (3, 3), (4, 4), (5, 4)] {
                c.eq(&format!("d_{t}"), v.get(&format!("d_{t}")).copied(), d);
            }
            for t in 1..=4 {
                c.eq(&format!("Delta_{t}"), v.get(&format!("Delta_{t}")).copied(), 0);
            }
            c.eq("Delta_5", v.get("Delta_5").copied(), -1);
            c.eq("delta_5", v.get("delta_5").copied(), 1);
            c.eq("o_1", v.get("o_1").copied(), 0);
            c.eq("o_2", v.get("o_2").copied(), 0);
            c.eq("h_1", v.get("h_1").copied(), 1);
        })
    });
    s.run("1 regression plane_cubic_p3", limit, || {
        row("plane_cubic_p3", 3, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 2);
            c.eq("d_3", v.get("d_3").copied(), 2);
            c.eq("Delta_3", v.get("Delta_3").copied(), -1);
            c.eq("o_2", v.get("o_2").copied(), 1);
            if let Some(a) = verdict(p, Theorem::A, 3, opts, c) {
                c.truth("theorem A at t = 3 passes", a.passed());
                c.eq("ell", a.get("ell"), 1);
                c.truth("plane-curve note", a.notes.iter().any(|n| n.contains("plane curve")));
            }
        })
    });
    s.run("1 regression veronese2", limit, || {
        row("veronese2", 3, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 5);
            c.eq("delta_2", v.get("delta_2").copied(), 0);
            c.eq("Delta_2", v.get("Delta_2").copied(), 2);
            c.eq("Delta_3", v.get("Delta_3").copied(), -1);
            c.eq("delta_3", v.get("delta_3").copied(), 4);
            c.eq("o_1", v.get("o_1").copied(), 0);
            c.eq("tan_dim_1", tan_variety_dim(p, 1, opts).ok().map(|x| x as i64), 4);
            c.eq("o_2", v.get("o_2").copied(), 0);
        })
    });
    s.run("1 regression segre21", limit, || {
        row("segre21", 2, |p, v, _, c| {
            c.eq("d_2", v.get("d_2").copied(), 5);
            c.eq("delta_2", v.get("delta_2").copied(), 4);
            let exp = expected_dims(p.k(), p.ambient_dim(), v["d_1"] as usize, 2);
            c.eq("k_2", exp.k_t as i64, 9);
            c.eq("trivial_2", exp.trivial as i64, 4);
            c.eq("Delta_2", v.get("Delta_2").copied(), 1);
            c.eq("o_1", v.get("o_1").copied(), 0);
        })
    });
    s.run("1 regression cone_rnc4", limit, || {
        row("cone_rnc4", 2, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 3);
            c.eq("delta_2", v.get("delta_2").copied(), 2);
            c.eq("Delta_2", v.get("Delta_2").copied(), 0);
            c.eq("o_1", v.get("o_1").copied(), 1);
            c.eq("h_1", v.get("h_1").copied(), 1);
            c.eq("dual_dim_1", dual_variety_dim(p, 1, opts).ok().map(|d| d.dim), 2);
            if let Some(a) = verdict(p, Theorem::A, 2, opts, c) {
                c.truth("theorem A at t = 2 passes", a.passed());
                c.eq("ell", a.get("ell"), 1);
            }
        })
    });
    s.run("1 regression cone_rnc5", limit, || {
        row("cone_rnc5", 3, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 3);
            c.eq("d_3", v.get("d_3").copied(), 4);
            c.eq("Delta_3", v.get("Delta_3").copied(), 0);
            c.eq("o_2", v.get("o_2").copied(), 1);
            if let Some(a) = verdict(p, Theorem::A, 3, opts, c) {
                c.truth("theorem A at t = 3 passes", a.passed());
            }
        })
    });
    s.run("1 regression cone_veronese", limit, || {
        row("cone_veronese", 2, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 6);
            c.eq("delta_2", v.get("delta_2").copied(), 3);
            c.eq("Delta_2", v.get("Delta_2").copied(), 2);
            c.eq("o_1", v.get("o_1").copied(), 1);
            c.eq("h_1", v.get("h_1").copied(), 2);
            if let Some(a) = verdict(p, Theorem::A, 2, opts, c) {
                c.truth("theorem A at t = 2 recorded not applicable", !a.applicable && a.pass.is_none());
                c.eq("ell", a.get("ell"), 0);
            }
            if let Some(b) = verdict(p, Theorem::B, 1, opts, c) {
                c.truth("theorem B at t = 1 passes", b.passed());
                c.eq("forward_pass", b.get("forward_pass"), 1);
                c.eq("reverse_pass", b.get("reverse_pass"), 1);
                c.eq("ell", b.get("ell"), 1);
                c.eq("Delta_next", b.get("Delta_next"), 2);
                c.eq("jacobian_rank", b.get("jacobian_rank"), 2);
            }
        })
    });
    s.run("1 regression tangentdev_rnc4", limit, || {
        row("tangentdev_rnc4", 2, |p, v, opts, c| {
            c.eq("d_2", v.get("d_2").copied(), 3);
            c.eq("Delta_2", v.get("Delta_2").copied(), 0);
            c.eq("o_1", v.get("o_1").copied(), 1);
            c.eq("h_1", v.get("h_1").copied(), 1);
            if let Some(a) = verdict(p, Theorem::A, 2, opts, c) {
                c.truth("theorem A at t = 2 passes", a.passed());
                c.truth("developable-bundle note", a.notes.iter().any(|n| n.contains("developable")));
            }
        })
    });
    s.run("1 regression cone_v3p2", limit, || {
        row("cone_v3p2", 3, |p, v, opts, c| {
            c.eq("Delta_2", v.get("Delta_2").copied(), 2);
            c.eq("Delta_3", v.get("Delta_3").copied(), 3);
            if let Some(ch) = verdict(p, Theorem::JacobianChain, 3, opts, c) {
                c.truth("Jacobian chain at t = 3 passes", ch.passed());
                c.eq("proper_subsystem", ch.get("proper_subsystem"), 1);
            }
        })
    });
}

fn identities(s: &mut Suite) {
    let opts = Options::symbolic();
    let mut delta_identity = Checks::default();
    let mut recursion = Checks::default();
    let mut literal = Checks::default();
    let mut excess = Checks::default();
    let mut apolar = Checks::default();
    let start = Instant::now();
    for name in catalog_names() {
        let p = entry(&name);
        let (k, n) = (p.k(), p.ambient_dim());
        let (d, gp) = match (osc_dims(&p, 4, &opts), generic_point(&p, 4, 4, &opts)) {
            (Ok(d), Ok(gp)) => (d, gp),
            (Err(e), _) | (_, Err(e)) => {
                delta_identity.err(&name, e);
                continue;
            }
        };
        for t in 1..=4u32 {
            let ti = t as usize;
            let laplace = laplace_basis_from_jets(&gp.jets, k, t, &gp.point);
            let form = fundamental_form_from_jets(&gp.jets, k, t);
            let (delta, big) = (laplace.count() as i64, form.projdim());
            let binom = count_exact(k, t) as i64;
            let tag = format!("{name} t={t}");
            delta_identity.eq(&format!("{tag} Delta"), big, binom - 1 - delta);
            recursion.eq(&format!("{tag} d"), d[ti] as i64, d[ti - 1] as i64 + big + 1);
            let exp = expected_dims(k, n, d[ti - 1], t);
            literal.eq(&format!("{tag} d = e - delta (e = {}, delta = {delta})", exp.expected), d[ti] as i64, exp.expected as i64 - delta);
            excess.eq(&format!("{tag} d = e - (delta - forced)"), d[ti] as i64, exp.expected as i64 - (delta - exp.forced as i64));

            let assoc = associated_system(&laplace);
            for f in form.forms() {
                for g in assoc.forms() {
                    match apolar_pair(&f, &g) {
                        Ok(x) if x == q(0) => {}
                        Ok(x) => apolar.err(&format!("{tag} <{f}, {g}>"), x),
                        Err(e) => apolar.err(&tag, e),
                    }
                }
            }
            apolar.truth(&format!("{tag} fundamental form is the apolar complement"), apolar_complement(&assoc) == form);
        }
    }
    let elapsed = start.elapsed();
    s.report("2 identity Delta_t = binom(k-1+t,t) - 1 - delta_t", delta_identity.0, elapsed);
    s.report("2 identity d_t = d_{t-1} + Delta_t + 1", recursion.0, Duration::ZERO);
    s.report("2 identity d_t = e_t - delta_t (literal)", literal.0, Duration::ZERO);
    s.report("2 identity d_t = e_t - (delta_t - forced_t)", excess.0, Duration::ZERO);
    s.report("2 identity apolar orthogonality", apolar.0, Duration::ZERO);
}

fn theorems(s: &mut Suite) {
    let opts = Options::default();
    s.run("3 Jacobian chain, 2 <= t <= 4, 5 points", None, || {
        let mut c = Checks::default();
        for name in catalog_names() {
            let p = entry(&name);
            for t in 2..=4 {
                match check_jacobian_chain(&p, t, &opts) {
                    Ok(v) => {
                        c.truth(&format!("{name} t={t} passes"), v.passed());
                        c.eq(&format!("{name} t={t} points"), v.get("points_checked"), 5);
                    }
                    Err(e) => c.err(&format!("{name} t={t}"), e),
                }
            }
        }
        c.0
    });
    s.run("3 theorem A wherever applicable", None, || {
        let mut c = Checks::default();
        for name in catalog_names() {
            let p = entry(&name);
            for t in 2..=4 {
                if let Some(v) = verdict(&p, Theorem::A, t, &opts, &mut c) {
                    c.truth(&format!("{name} t={t}"), !v.failed());
                }
            }
        }
        c.0
    });
    s.run("3 tangent lemma everywhere", None, || {
        let mut c = Checks::default();
        for name in catalog_names() {
            let p = entry(&name);
            for t in 2..=4 {
                if let Some(v) = verdict(&p, Theorem::TangentLemma, t, &opts, &mut c) {
                    c.truth(&format!("{name} t={t}"), v.passed());
                }
            }
        }
        c.0
    });
    s.run("3 theorem B gating", None, || {
        let mut c = Checks::default();
        if let Some(v) = verdict(&entry("cone_veronese"), Theorem::B, 1, &opts, &mut c) {
            c.truth("cone_veronese passes", v.passed());
            c.eq("cone_veronese forward", v.get("forward_pass"), 1);
            c.eq("cone_veronese reverse", v.get("reverse_pass"), 1);
        }
        for name in ["cone_rnc4", "tangentdev_rnc4"] {
            if let Some(v) = verdict(&entry(name), Theorem::B, 1, &opts, &mut c) {
                c.truth(&format!("{name} not applicable"), !v.applicable && v.pass.is_none());
            }
        }
        for name in catalog_names() {
            for t in 1..=3 {
                if let Some(v) = verdict(&entry(&name), Theorem::B, t, &opts, &mut c) {
                    c.truth(&format!("{name} t={t} never fails"), !v.failed());
                }
            }
        }
        c.0
    });
}

fn invariance(s: &mut Suite) {
    s.run("4 invariance under reparametrization and projective change", None, || {
        let opts = Options::default();
        let mut c = Checks::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for name in catalog_names() {
            let p = entry(&name);
            let Ok(base) = invariant_integers(&p, 3, &opts) else {
                c.0.push(format!("{name}: base computation failed"));
                continue;
            };
            let mut variants = Vec::new();
            for _ in 0..3 {
                variants.push(p.reparametrize(&unimodular(p.k(), &mut rng)));
            }
            for _ in 0..3 {
                variants.push(p.projective_transform(&invertible(p.ambient_dim() + 1, &mut rng)));
            }
            for (i, q) in variants.into_iter().enumerate() {
                match q.and_then(|q| invariant_integers(&q, 3, &opts)) {
                    Ok(ints) if ints == base => {}
                    Ok(ints) => c.0.push(format!("{name} variant {i}: {ints:?} vs {base:?}")),
                    Err(e) => c.err(&format!("{name} variant {i}"), e),
                }
            }
        }
        c.0
    });
}

fn oracle_agreement(s: &mut Suite) {
    s.run("5 sampled mode equals symbolic mode", None, || {
        let mut c = Checks::default();
        for name in catalog_names() {
            let p = entry(&name);
            let sampled = run_report(&p, 4, &Options::default());
            let symbolic = run_report(&p, 4, &Options::symbolic());
            match (sampled, symbolic) {
                (Ok(a), Ok(b)) => {
                    for m in integer_mismatches(&a, &b) {
                        c.0.push(format!("{name} {m}"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => c.err(&name, e),
            }
        }
        c.0
    });
}

fn determinism(s: &mut Suite, suite_start: Instant) {
    s.run("6 determinism", None, || {
        let mut c = Checks::default();
        let opts = Options::default().with_seed(7);
        for name in catalog_names() {
            let p = entry(&name);
            let a = run_report(&p, 3, &opts).map(|r| r.to_json());
            let b = run_report(&p, 3, &opts).map(|r| r.to_json());
            c.truth(&format!("{name} byte-identical"), a.is_ok() && a == b);
        }
        c.0
    });
    let total = suite_start.elapsed();
    let problems = if total > Duration::from_secs(120) {
        vec![format!("suite took {:.1}s", total.as_secs_f64())]
    } else {
        Vec::new()
    };
    s.report("6 performance: full suite under 2 minutes", problems, total);
}

fn main() {
    let start = Instant::now();
    let mut s = Suite::default();
    regression(&mut s);
    identities(&mut s);
    theorems(&mut s);
    invariance(&mut s);
    oracle_agreement(&mut s);
    determinism(&mut s, start);
    if s.failed.is_empty() {
        println!("\nacceptance: all criteria pass");
    } else {
        println!("\nacceptance: {} failing: {}", s.failed.len(), s.failed.join("; "));
        std::process::exit(1);
    }
}

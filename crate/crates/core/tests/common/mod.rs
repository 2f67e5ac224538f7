#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use osculant::defects::{gauss_image_dim, osculating_defect};
use osculant::exact::MatrixQ;
use osculant::forms::fundamental_form_from_jets;
use osculant::jets::{generic_point, laplace_basis_from_jets, osc_dims};
use osculant::{Options, Parametrization, Result};

/// `u -> A u` with `A` a product of random elementary integer matrices.
pub fn unimodular(k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    if k == 1 {
        a[0][0] = if rng.gen_bool(0.5) { 1 } else { -1 };
        return a;
    }
    for _ in 0..3 * k {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        let src = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(src) {
            *x += c * y;
        }
    }
    if rng.gen_bool(0.5) {
        a.swap(0, k - 1);
    }
    a
}

/// A random invertible `n x n` integer matrix with small entries.
pub fn invertible(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2i64..=2)).collect()).collect();
        let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        if MatrixQ::from_i64(&rows).rank() == n {
            return m;
        }
    }
}

/// `d_t`, pointwise `delta_t`, `Delta_t`, `o_t` and `h_t` for `1 <= t <= t_max`.
pub fn invariant_integers(p: &Parametrization, t_max: u32, opts: &Options) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    let d = osc_dims(p, t_max, opts)?;
    let gp = generic_point(p, t_max, t_max, opts)?;
    for t in 1..=t_max {
        out.insert(format!("d_{t}"), d[t as usize] as i64);
        out.insert(format!("delta_{t}"), laplace_basis_from_jets(&gp.jets, p.k(), t, &gp.point).count() as i64);
        out.insert(format!("Delta_{t}"), fundamental_form_from_jets(&gp.jets, p.k(), t).projdim());
        out.insert(format!("o_{t}"), osculating_defect(p, t, opts)?.defect);
        out.insert(format!("h_{t}"), gauss_image_dim(p, t, opts)? as i64);
    }
    Ok(out)
}

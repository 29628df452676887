//! The entropy-type maximization behind the growth rate of the graded
//! codimension sequence, its closed-form critical point, and finite-`n`
//! envelopes for exact codimension data.
//!
//! Writing `a = t(t+1)/2`, `b = t(t-1)/2`, `c = t^2 - 1` for the three
//! letter blocks, the constrained maximum of
//! `phi(x) = prod x_i^{-x_i}` over the simplex with balanced odd blocks
//! reduces to the one-variable function
//! `g(z) = cz ln z + (1-cz) ln(1-cz) - (1-cz) ln(c t^2) / 2`,
//! whose unique interior minimum sits at `z0 = 1/(c + t sqrt(c))` with
//! `exp(-g(z0)) = c + t sqrt(c)`.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codim::{multinomial, MultiDegree};
use crate::error::{Error, Result};
use crate::numeric::{big_ln, format_sig12};
use crate::report::CheckReport;

/// `a = t(t+1)/2, b = t(t-1)/2, c = t^2 - 1` as floats.
fn blocks(t: u64) -> (f64, f64, f64) {
    let tf = t as f64;
    (tf * (tf + 1.0) / 2.0, tf * (tf - 1.0) / 2.0, tf * tf - 1.0)
}

fn ensure_power_of_two(t: u64) -> Result<()> {
    if t >= 2 && t.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::Config(format!("t = {t} is not a power of two >= 2")))
    }
}

/// Exponential of the Shannon entropy: `prod x_i^{-x_i}` with `0^0 = 1`.
/// Requires a probability vector (tolerance 1e-12 on the sum).
pub fn phi(x: &[f64]) -> Result<f64> {
    if x.iter().any(|&xi| xi < 0.0) {
        return Err(Error::Domain(
            "negative entry in a probability vector".into(),
        ));
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("probability vector sums to {sum}")));
    }
    let entropy: f64 = x
        .iter()
        .map(|&xi| if xi > 0.0 { -xi * xi.ln() } else { 0.0 })
        .sum();
    Ok(entropy.exp())
}

/// The reduced objective `g(z)` on `0 < z < 1/c`; minimizing it maximizes
/// the constrained entropy.
pub fn g_of_z(z: f64, t: u64) -> Result<f64> {
    ensure_power_of_two(t)?;
    let (_, _, c) = blocks(t);
    if !(z > 0.0 && z < 1.0 / c) {
        return Err(Error::Domain(format!("z = {z} outside (0, {})", 1.0 / c)));
    }
    let tf = t as f64;
    let cz = c * z;
    Ok(c * z * z.ln() + (1.0 - cz) * (1.0 - cz).ln() - 0.5 * (1.0 - cz) * (c * tf * tf).ln())
}

/// Closed-form growth rate `t^2 - 1 + t sqrt(t^2 - 1)`.
pub fn theoretical_exponent(t: u64) -> Result<f64> {
    ensure_power_of_two(t)?;
    let (_, _, c) = blocks(t);
    Ok(c + t as f64 * c.sqrt())
}

/// The critical point `z0 = 1 / (t^2 - 1 + t sqrt(t^2 - 1))`.
pub fn z_star(t: u64) -> Result<f64> {
    Ok(1.0 / theoretical_exponent(t)?)
}

/// Central-difference step sizes.  The nominal steps 1e-6 and 1e-4 balance
/// truncation against cancellation for small block sizes, but the third
/// derivative of `g` grows like `c^3`, so once `z0` shrinks the steps must
/// shrink with it to hold the residual below 1e-8 (first seen at t = 16).
fn diff_steps(t: u64) -> Result<(f64, f64)> {
    let (_, _, c) = blocks(t);
    let z0 = z_star(t)?;
    let room = (z0 / 2.0).min((1.0 / c - z0) / 2.0);
    let h1 = 1e-6f64.min(1e-4 * z0).min(room);
    let h2 = 1e-4f64.min(1e-2 * z0).min(room);
    Ok((h1, h2))
}

/// First derivative of `g` at `z0` by central differences.
pub fn g_prime_residual(t: u64) -> Result<f64> {
    let z0 = z_star(t)?;
    let (h, _) = diff_steps(t)?;
    Ok((g_of_z(z0 + h, t)? - g_of_z(z0 - h, t)?) / (2.0 * h))
}

/// Second derivative of `g` at `z0` by central differences.
pub fn g_second(t: u64) -> Result<f64> {
    let z0 = z_star(t)?;
    let (_, h) = diff_steps(t)?;
    Ok((g_of_z(z0 + h, t)? - 2.0 * g_of_z(z0, t)? + g_of_z(z0 - h, t)?) / (h * h))
}

/// Numerically certifies the closed-form critical point: vanishing first
/// derivative, positive second derivative, the value identity
/// `g(z0) = -ln(exponent)`, and a global grid scan locating the minimum.
pub fn verify_critical_point(t: u64, tol: f64) -> Result<CheckReport> {
    if tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    ensure_power_of_two(t)?;
    let mut report = CheckReport::new(format!("critical point, t={t}"));
    let (_, _, c) = blocks(t);
    let z0 = z_star(t)?;
    let expo = theoretical_exponent(t)?;

    let residual = g_prime_residual(t)?;
    report.record(
        "first derivative vanishes at z0",
        residual.abs() < tol,
        Some(format!("|g'(z0)| = {:e}", residual.abs())),
    );

    let second = g_second(t)?;
    report.record(
        "second derivative is positive at z0",
        second > 0.0,
        Some(format!("g''(z0) = {second:e}")),
    );

    let value_err = (g_of_z(z0, t)? + expo.ln()).abs();
    report.record(
        "g(z0) equals -ln(exponent)",
        value_err < tol,
        Some(format!("|g(z0) + ln E| = {value_err:e}")),
    );

    const GRID: usize = 10_000;
    let width = (1.0 / c) / GRID as f64;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..GRID {
        let z = (i as f64 + 0.5) * width;
        let v = g_of_z(z, t)?;
        if v < best.0 {
            best = (v, z);
        }
    }
    let dist = (best.1 - z0).abs();
    report.record(
        format!("grid scan of {GRID} points locates the minimum at z0"),
        dist <= width,
        Some(format!(
            "grid argmin {} vs z0 {} (spacing {width:e})",
            best.1, z0
        )),
    );

    Ok(report)
}

/// Maximizer of the reduced entropy objective under the block constraints.
#[derive(Clone, Copy, Debug)]
pub struct PhiMaximum {
    /// Common value of the upper-right coordinates.
    pub x: f64,
    /// Common value of the lower-left coordinates.
    pub y: f64,
    /// Common value of the even coordinates.
    pub z: f64,
    pub value: f64,
}

/// Maximizes the block-symmetric entropy product subject to `ax = by` and
/// `ax + by + cz = 1` by golden-section search on `g` in `z`.
pub fn maximize_phi_constrained(t: u64) -> Result<PhiMaximum> {
    ensure_power_of_two(t)?;
    let (a, b, c) = blocks(t);
    let span = 1.0 / c;
    let (mut lo, mut hi) = (1e-9 * span, (1.0 - 1e-9) * span);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut m1 = hi - inv_phi * (hi - lo);
    let mut m2 = lo + inv_phi * (hi - lo);
    let mut f1 = g_of_z(m1, t)?;
    let mut f2 = g_of_z(m2, t)?;
    for _ in 0..200 {
        if f1 <= f2 {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - inv_phi * (hi - lo);
            f1 = g_of_z(m1, t)?;
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + inv_phi * (hi - lo);
            f2 = g_of_z(m2, t)?;
        }
    }
    let z = (lo + hi) / 2.0;
    let x = (1.0 - c * z) / (2.0 * a);
    let y = (1.0 - c * z) / (2.0 * b);
    Ok(PhiMaximum {
        x,
        y,
        z,
        value: (-g_of_z(z, t)?).exp(),
    })
}

/// Spot-checks the block-symmetric reduction: random feasible points of the
/// full simplex (balanced odd blocks) never beat the reduced maximum.
/// Returns the largest entropy product observed.
pub fn probe_reduction(t: u64, samples: usize, seed: u64) -> Result<f64> {
    ensure_power_of_two(t)?;
    let (a, b, c) = blocks(t);
    let (a, b, c) = (a as usize, b as usize, c as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut point = vec![0.0f64; a + b + c];
    for _ in 0..samples {
        let s: f64 = rng.gen_range(0.0..0.5);
        fill_block(&mut point[..a], s, &mut rng);
        let (lo, hi) = (a, a + b);
        fill_block(&mut point[lo..hi], s, &mut rng);
        fill_block(&mut point[hi..], 1.0 - 2.0 * s, &mut rng);
        worst = worst.max(phi(&point)?);
    }
    Ok(worst)
}

/// Fills a block with a random composition of the given mass.
fn fill_block(block: &mut [f64], mass: f64, rng: &mut ChaCha8Rng) {
    let mut total = 0.0;
    for x in block.iter_mut() {
        // Exponential draws normalize to a uniform point on the simplex.
        *x = -rng.gen_range(f64::EPSILON..1.0f64).ln();
        total += *x;
    }
    for x in block.iter_mut() {
        *x *= mass / total;
    }
}

/// Checks the factorial sandwich
/// `phi^n / n^d <= multinomial(v) <= n phi^n`
/// for one multidegree with all parts positive, comparing the exact
/// multinomial against log-space bounds with a relative margin of 1e-9.
pub fn stirling_sandwich_check(v: &MultiDegree) -> bool {
    let n = v.total();
    assert!(n >= 1, "empty multidegree");
    assert!(
        v.counts().iter().all(|&c| c >= 1),
        "sandwich requires all parts positive"
    );
    let d = v.len() as f64;
    let nf = n as f64;
    let ln_phi: f64 = v
        .counts()
        .iter()
        .map(|&c| {
            let p = c as f64 / nf;
            -p * p.ln()
        })
        .sum();
    let ln_m = big_ln(&multinomial(v));
    let lower = nf * ln_phi - d * nf.ln();
    let upper = nf.ln() + nf * ln_phi;
    leq_with_margin(lower, ln_m) && leq_with_margin(ln_m, upper)
}

fn leq_with_margin(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// The coarse envelope `c_n <= (n+1)^{d+1} E^n` valid for every balance
/// case of the Z-degree constraint, with `E` the closed-form exponent and
/// `d = 2t^2 - 1`.
pub fn upper_bound_check(n: u32, c_n: &BigUint, t: u64) -> Result<bool> {
    let expo = theoretical_exponent(t)?;
    let d = (2 * t * t - 1) as f64;
    let ln_c = big_ln(c_n);
    let ln_bound = (d + 1.0) * ((n + 1) as f64).ln() + n as f64 * expo.ln();
    Ok(leq_with_margin(ln_c, ln_bound))
}

/// Finite-`n` bracket derived from one exact codimension.
#[derive(Clone, Copy, Debug)]
pub struct ExponentEstimate {
    pub n: u32,
    /// `(c_n / n^d)^{1/n}`
    pub lower: f64,
    /// `(c_n)^{1/n}`
    pub root: f64,
    /// `(n^d c_n)^{1/n}`
    pub upper: f64,
}

/// Certified critical-point data plus per-`n` brackets from exact
/// codimensions.
#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub t: u64,
    pub z_star: f64,
    pub g_at_z_star: f64,
    pub g_prime_residual: f64,
    pub g_second: f64,
    pub theoretical: f64,
    pub estimates: Vec<ExponentEstimate>,
}

impl ExponentReport {
    /// JSON with every real as a decimal string at 12 significant digits.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t": self.t,
            "z_star": format_sig12(self.z_star),
            "g_at_z_star": format_sig12(self.g_at_z_star),
            "g_prime_residual": format_sig12(self.g_prime_residual),
            "g_second": format_sig12(self.g_second),
            "theoretical": format_sig12(self.theoretical),
            "estimates": self.estimates.iter().map(|e| {
                serde_json::json!({
                    "n": e.n,
                    "lower_est": format_sig12(e.lower),
                    "root": format_sig12(e.root),
                    "upper_est": format_sig12(e.upper),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Builds the full report from exact codimensions `(n, c_n)`.
pub fn estimate_exponent(t: u64, codims: &[(u32, BigUint)]) -> Result<ExponentReport> {
    let z0 = z_star(t)?;
    let d = (2 * t * t - 1) as f64;
    let estimates = codims
        .iter()
        .map(|(n, c)| {
            let nf = *n as f64;
            let ln_c = big_ln(c);
            ExponentEstimate {
                n: *n,
                lower: ((ln_c - d * nf.ln()) / nf).exp(),
                root: (ln_c / nf).exp(),
                upper: ((ln_c + d * nf.ln()) / nf).exp(),
            }
        })
        .collect();
    Ok(ExponentReport {
        t,
        z_star: z0,
        g_at_z_star: g_of_z(z0, t)?,
        g_prime_residual: g_prime_residual(t)?,
        g_second: g_second(t)?,
        theoretical: theoretical_exponent(t)?,
        estimates,
    })
}

//! Certified isolation of the roots of a squarefree polynomial.
//!
//! Approximations come from Aberth iteration, first in doubles and then at
//! the working precision. Certification uses Weierstrass corrections
//! `w_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`: the discs
//! `D(z_i, n |w_i|)` cover all roots, and a disc disjoint from the others
//! contains exactly one root.

use num_complex::Complex64;

use super::ball::{ComplexBall, Dyadic};
use crate::error::{Error, Result};

const F64_ITERATIONS: usize = 500;

/// Aberth iteration in doubles. Coefficients low-to-high, nonzero leading.
pub fn aberth_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    if n == 1 {
        return vec![-coeffs[0] / lc];
    }
    // Fujiwara-style radius for the initial circle
    let radius = (0..n)
        .map(|k| (coeffs[k] / lc).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let dcoeffs: Vec<Complex64> = (1..=n).map(|k| coeffs[k] * k as f64).collect();
    for _ in 0..F64_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = horner(coeffs, z[i]);
            let dv = horner(&dcoeffs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = if dv.norm() == 0.0 { Complex64::new(1e-8, 1e-8) } else { pv / dv };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() == 0.0 { ratio } else { ratio / denom };
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner(cs: &[Complex64], z: Complex64) -> Complex64 {
    cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn exact_mid(b: &ComplexBall, prec: u32) -> ComplexBall {
    let (re, _) = b.re.round(prec);
    let (im, _) = b.im.round(prec);
    ComplexBall::exact(re, im, prec)
}

fn mids(cs: &[ComplexBall], prec: u32) -> Vec<ComplexBall> {
    cs.iter().map(|c| exact_mid(c, prec)).collect()
}

/// Aberth steps at working precision on exact midpoints.
pub fn aberth_polish(coeffs: &[ComplexBall], z: &mut [ComplexBall], prec: u32, iterations: usize) {
    let n = coeffs.len() - 1;
    let cs = mids(coeffs, prec);
    let dcs: Vec<ComplexBall> = (1..=n)
        .map(|k| cs[k].mul(&ComplexBall::exact(Dyadic::from_int(k as i64), Dyadic::zero(), prec)))
        .map(|b| exact_mid(&b, prec))
        .collect();
    let tol = -(prec as i64) + 4;
    for _ in 0..iterations {
        let mut converged = true;
        for i in 0..n {
            let zi = exact_mid(&z[i], prec);
            let pv = exact_mid(&ComplexBall::eval_poly(&cs, &zi), prec);
            if pv.re.is_zero() && pv.im.is_zero() {
                continue;
            }
            let dv = exact_mid(&ComplexBall::eval_poly(&dcs, &zi), prec);
            let Some(ratio) = pv.div(&dv).map(|r| exact_mid(&r, prec)) else {
                converged = false;
                continue;
            };
            let mut s = ComplexBall::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    if let Some(inv) = zi.sub(&exact_mid(zj, prec)).inv() {
                        s = s.add(&exact_mid(&inv, prec));
                    }
                }
            }
            let denom = exact_mid(&ComplexBall::one(prec).sub(&ratio.mul(&s)), prec);
            let step = match ratio.div(&denom) {
                Some(st) => exact_mid(&st, prec),
                None => ratio,
            };
            let scale = zi.mid_abs_cheap_upper().magnitude().max(0);
            if step.mid_abs_cheap_upper().magnitude() > tol + scale {
                converged = false;
            }
            z[i] = exact_mid(&zi.sub(&step), prec);
        }
        if converged {
            break;
        }
    }
}

/// Weierstrass discs around `z`; `None` unless they are pairwise disjoint.
pub fn certify(coeffs: &[ComplexBall], z: &[ComplexBall]) -> Option<Vec<ComplexBall>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let prec = z.iter().map(|b| b.prec).max().unwrap_or(64);
    let lc = &coeffs[n];
    if lc.contains_zero() {
        return None;
    }
    let nb = ComplexBall::exact(Dyadic::from_int(n as i64), Dyadic::zero(), prec);
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let zi = exact_mid(&z[i], prec);
        let pv = ComplexBall::eval_poly(coeffs, &zi);
        let mut denom = lc.clone();
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                denom = denom.mul(&zi.sub(&exact_mid(zj, prec)));
            }
        }
        let w = pv.div(&denom)?;
        let r = nb.mul(&w).abs_upper();
        discs.push(ComplexBall { re: zi.re, im: zi.im, rad: r, prec });
    }
    for i in 0..n {
        for j in i + 1..n {
            if discs[i].overlaps(&discs[j]) {
                return None;
            }
        }
    }
    Some(discs)
}

/// Isolates all roots of a squarefree polynomial given by a coefficient
/// oracle `coeffs(prec)` (balls, low-to-high). Each returned disc contains
/// exactly one root and has radius at most `2^-target * max(1, |mid|)`.
pub fn isolate<F>(coeffs: F, target: u32, cap: u32) -> Result<Vec<ComplexBall>>
where
    F: Fn(u32) -> Vec<ComplexBall>,
{
    let mut prec = (target + 16).max(64);
    let c0 = coeffs(prec);
    let n = c0.len() - 1;
    let f64s: Vec<Complex64> = c0.iter().map(|c| c.mid_c64()).collect();
    let mut z: Vec<ComplexBall> = if f64s.iter().all(|c| c.is_finite()) && f64s[n].norm() > 0.0 {
        aberth_f64(&f64s).into_iter().map(|c| ComplexBall::from_c64(sanitize(c), prec)).collect()
    } else {
        (0..n).map(|k| ComplexBall::from_c64(Complex64::from_polar(1.0, k as f64 + 0.4), prec)).collect()
    };
    loop {
        let cs = coeffs(prec);
        let iterations = 8 + 2 * (prec as f64).log2() as usize;
        aberth_polish(&cs, &mut z, prec, iterations);
        if let Some(discs) = certify(&cs, &z) {
            let ok = discs.iter().all(|d| {
                let scale = d.mid_abs_cheap_upper().max(Dyadic::from_int(1));
                d.rad <= scale.mul(&Dyadic::pow2(-(target as i64)))
            });
            if ok {
                return Ok(discs);
            }
        }
        prec *= 2;
        if prec > cap {
            return Err(Error::PrecisionCap { cap, context: format!("isolating the roots of a degree-{n} polynomial") });
        }
        z = z.iter().map(|b| b.with_prec(prec)).collect();
    }
}

fn sanitize(c: Complex64) -> Complex64 {
    if c.is_finite() {
        c
    } else {
        Complex64::new(0.5, 0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn rational_coeffs(cs: &[i64]) -> impl Fn(u32) -> Vec<ComplexBall> + '_ {
        move |prec| cs.iter().map(|&c| ComplexBall::from_rational(&rat(c, 1), prec)).collect()
    }

    #[test]
    fn isolates_cubic_roots() {
        // (x - 1)(x + 2)(x - 3)
        let discs = isolate(rational_coeffs(&[6, -5, -2, 1]), 60, 4096).unwrap();
        let mut re: Vec<f64> = discs.iter().map(|d| d.re.to_f64()).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 2.0).abs() < 1e-15 && (re[1] - 1.0).abs() < 1e-15 && (re[2] - 3.0).abs() < 1e-15);
        for d in &discs {
            assert!(d.rad <= Dyadic::pow2(-58));
        }
    }

    #[test]
    fn clustered_roots_need_more_precision() {
        // x^2 - 2^-100: roots at +-2^-50
        let prec_coeffs = |prec: u32| {
            vec![
                ComplexBall::exact(Dyadic::pow2(-100).neg(), Dyadic::zero(), prec),
                ComplexBall::zero(prec),
                ComplexBall::one(prec),
            ]
        };
        let discs = isolate(prec_coeffs, 60, 4096).unwrap();
        assert_eq!(discs.len(), 2);
        assert!(!discs[0].overlaps(&discs[1]));
    }

    #[test]
    fn unit_roots_of_degree_twelve() {
        let mut cs = vec![0i64; 13];
        cs[0] = -1;
        cs[12] = 1;
        let discs = isolate(rational_coeffs(&cs), 80, 4096).unwrap();
        assert_eq!(discs.len(), 12);
        for d in &discs {
            assert!((d.mid_c64().norm() - 1.0).abs() < 1e-15);
        }
    }
}

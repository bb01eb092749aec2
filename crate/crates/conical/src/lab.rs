//! Verification fixtures for two non-generation phenomena: a bounded scan of
//! the Fermat cone boundary, and the four-dimensional cone family over
//! ℚ(√2) whose integer points admit arbitrarily unbalanced eigen-ratios.

use std::sync::Arc;

use num::{BigInt, Integer, Zero};

use crate::algebraic::{rat, AlgebraicNumber, FieldContext, Rat};
use crate::cone::{Cone, ConeKind};
use crate::error::Error;
use crate::hilbert::ZVec;
use crate::linalg::Matrix;
use crate::parallel;
use crate::Result;

/// Scan bound guard.
pub const FERMAT_ZMAX_CAP: u64 = 10_000;
/// Index guard for the 4D family (coefficient growth).
pub const FAMILY_N1_CAP: u32 = 20;

// ---------------------------------------------------------------------------
// Fermat cone boundary scan
// ---------------------------------------------------------------------------

/// Integer solutions of x^{2k} + y^{2k} = z^{2k} with 0 ≤ x ≤ z, y ≥ 0,
/// 1 ≤ z ≤ z_max; sign symmetry is factored out by the sign restriction.
#[derive(Debug, Clone)]
pub struct FermatScanResult {
    pub k: u32,
    pub z_max: u64,
    pub hits: Vec<(BigInt, BigInt, BigInt)>,
}

impl FermatScanResult {
    /// True when every hit lies on a coordinate plane (xy = 0), i.e. the
    /// only integral boundary directions are (±1,0,1) and (0,±1,1).
    pub fn all_trivial(&self) -> bool {
        self.hits.iter().all(|(x, y, _)| x.is_zero() || y.is_zero())
    }
}

/// Exhaustive big-integer scan of the boundary x^{2k} + y^{2k} = z^{2k}.
pub fn fermat_scan(k: u32, z_max: u64) -> Result<FermatScanResult> {
    if k < 2 {
        return Err(Error::InvalidContext("fermat scan needs k >= 2".into()));
    }
    if z_max > FERMAT_ZMAX_CAP {
        return Err(Error::BoundTooLarge(z_max, FERMAT_ZMAX_CAP));
    }
    let exp = 2 * k;
    let hits = parallel::map_ranges(z_max as usize, |range| {
        let mut found = Vec::new();
        for i in range {
            let z = BigInt::from(i as u64 + 1);
            let zp = z.pow(exp);
            let mut x = BigInt::zero();
            while x <= z {
                let w = &zp - x.pow(exp);
                let y = w.nth_root(exp);
                if y.pow(exp) == w {
                    found.push((x.clone(), y, z.clone()));
                }
                x += 1;
            }
        }
        found
    });
    Ok(FermatScanResult { k, z_max, hits })
}

// ---------------------------------------------------------------------------
// The 4D family over Q(sqrt 2)
// ---------------------------------------------------------------------------

fn sqrt2_ctx() -> Arc<FieldContext> {
    FieldContext::sqrt(2).expect("2 is squarefree")
}

fn alg_int(ctx: &Arc<FieldContext>, n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_int(ctx, n)
}

/// √2 as a field element.
fn root2(ctx: &Arc<FieldContext>) -> AlgebraicNumber {
    AlgebraicNumber::generator(ctx)
}

/// The four extreme rays u₁..u₄ of the 4D cone.
pub fn rays_4d(ctx: &Arc<FieldContext>) -> Vec<Vec<AlgebraicNumber>> {
    let s = root2(ctx);
    let z = AlgebraicNumber::zero(ctx);
    let o = AlgebraicNumber::one(ctx);
    vec![
        vec![o.clone(), s.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), s.clone()],
        vec![o.neg(), s.clone(), alg_int(ctx, -2), s.scale(&rat(2, 1))],
        vec![o, s.neg(), AlgebraicNumber::one(ctx), s.neg()],
    ]
}

/// Ray matrix with columns u₁..u₄.
pub fn ray_matrix_4d(ctx: &Arc<FieldContext>) -> Result<Matrix> {
    Matrix::from_columns(ctx, &rays_4d(ctx))
}

/// The block-diagonal symmetry diag(B, B) with B = [[3,2],[4,3]].
pub fn block_matrix_4d(ctx: &Arc<FieldContext>) -> Matrix {
    Matrix::from_int_rows(
        ctx,
        &[vec![3, 2, 0, 0], vec![4, 3, 0, 0], vec![0, 0, 3, 2], vec![0, 0, 4, 3]],
    )
}

/// The full 4D cone cone(u₁, u₂, u₃, u₄).
pub fn build_4d_cone() -> Result<Cone> {
    let ctx = sqrt2_ctx();
    let rays = rays_4d(&ctx);
    Cone::new(&ctx, 4, ConeKind::Pointed, rays)
}

/// The sub-cone cone(u₁, u₁+u₂, u₃, u₃+u₄).
pub fn build_4d_subcone() -> Result<Cone> {
    let ctx = sqrt2_ctx();
    let u = rays_4d(&ctx);
    let add = |a: &[AlgebraicNumber], b: &[AlgebraicNumber]| -> Vec<AlgebraicNumber> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    };
    let rays = vec![u[0].clone(), add(&u[0], &u[1]), u[2].clone(), add(&u[2], &u[3])];
    Cone::new(&ctx, 4, ConeKind::Pointed, rays)
}

/// One member of the integer point family with eigen-coordinates
/// α₂ = ½(√2−1)^{2n₁+1}, α₄ = ½, α₁ = ½(α₂+ᾱ₄), α₃ = ½(−ᾱ₂+α₄),
/// written as αᵢ = aᵢ/2 + bᵢ√2/4 with the image v = (2a₁, 4b₁, 2a₂, 4b₂).
#[derive(Debug, Clone)]
pub struct FamilyCheck {
    pub n1: u32,
    pub alpha: Vec<AlgebraicNumber>,
    /// (a₁, b₁, a₂, b₂) of the half-integer parametrization.
    pub ints: [BigInt; 4],
    pub v: ZVec,
    pub checks: Vec<(String, bool)>,
}

impl FamilyCheck {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Half-integer parameters (a, b) of x = a/2 + b√2/4, if they are integers.
fn half_params(x: &AlgebraicNumber) -> Option<(BigInt, BigInt)> {
    let a = x.rat_part() * Rat::from_integer(BigInt::from(2));
    let b = x.irr_part() * Rat::from_integer(BigInt::from(4));
    if a.is_integer() && b.is_integer() {
        Some((a.to_integer(), b.to_integer()))
    } else {
        None
    }
}

fn family_alpha(ctx: &Arc<FieldContext>, n1: u32, alpha4: AlgebraicNumber) -> Vec<AlgebraicNumber> {
    let half = rat(1, 2);
    let t = root2(ctx).sub(&AlgebraicNumber::one(ctx)).pow(2 * n1 as u64 + 1);
    let a2 = t.scale(&half);
    let a1 = a2
        .add(&alpha4.galois_conjugate().expect("quadratic context"))
        .scale(&half);
    let a3 = a2
        .galois_conjugate()
        .expect("quadratic context")
        .neg()
        .add(&alpha4)
        .scale(&half);
    vec![a1, a2, a3, alpha4]
}

/// Builds and checks the family point for index n1.
pub fn family_point(n1: u32) -> Result<FamilyCheck> {
    if n1 > FAMILY_N1_CAP {
        return Err(Error::IndexTooLarge(n1 as u64, FAMILY_N1_CAP as u64));
    }
    let ctx = sqrt2_ctx();
    let alpha = family_alpha(&ctx, n1, AlgebraicNumber::from_rat(&ctx, rat(1, 2)));
    let params: Vec<Option<(BigInt, BigInt)>> = alpha.iter().map(half_params).collect();
    let integral = params.iter().all(|p| p.is_some());
    let zero = BigInt::zero();
    let get = |i: usize| params[i].clone().unwrap_or((zero.clone(), zero.clone()));
    let (a1, b1) = get(0);
    let (a2, b2) = get(1);
    let v: ZVec = vec![2 * &a1, 4 * &b1, 2 * &a2, 4 * &b2];

    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("half_parameters_integral".into(), integral));
    checks.push(("a2_odd".into(), a2.is_odd()));
    checks.push(("b2_even".into(), b2.is_even()));
    checks.push(("alpha_positive".into(), alpha.iter().all(|x| x.sign() > 0)));

    let cone = build_4d_cone()?;
    let v_rat: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
    checks.push(("v_in_cone".into(), cone.contains(&v_rat)?));

    // alpha2 * conj(alpha2) = -1/4 exactly.
    let norm = alpha[1].mul(&alpha[1].galois_conjugate()?);
    checks.push((
        "alpha2_norm_is_minus_quarter".into(),
        norm == AlgebraicNumber::from_rat(&ctx, rat(-1, 4)),
    ));

    // alpha1 * alpha4 < 1/4 exactly.
    let prod = alpha[0].mul(&alpha[3]);
    let quarter = AlgebraicNumber::from_rat(&ctx, rat(1, 4));
    checks.push(("alpha1_alpha4_below_quarter".into(), quarter.sub(&prod).sign() > 0));

    // Ratio alpha1/alpha2 = 1/2 + (1/2)(sqrt2 + 1)^{2 n1 + 1} exactly; the
    // family escapes every finite ratio bound as n1 grows.
    let grow = root2(&ctx).add(&AlgebraicNumber::one(&ctx)).pow(2 * n1 as u64 + 1);
    let expected_ratio = AlgebraicNumber::from_rat(&ctx, rat(1, 2))
        .add(&grow.scale(&rat(1, 2)));
    checks.push((
        "ratio_closed_form".into(),
        alpha[0] == alpha[1].mul(&expected_ratio),
    ));

    Ok(FamilyCheck { n1, alpha, ints: [a1, b1, a2, b2], v, checks })
}

/// Family point built with α₄ doubled to 1 (and α₁, α₃ recomputed); used as
/// a negative control: its product bound fails and a boundary vector becomes
/// subtractable.
pub fn perturbed_family_alpha(n1: u32) -> Result<Vec<AlgebraicNumber>> {
    if n1 > FAMILY_N1_CAP {
        return Err(Error::IndexTooLarge(n1 as u64, FAMILY_N1_CAP as u64));
    }
    let ctx = sqrt2_ctx();
    Ok(family_alpha(&ctx, n1, AlgebraicNumber::one(&ctx)))
}

/// Decides whether no nonzero boundary vector with β₂ = 0 can be subtracted
/// from the point with the given eigen-coordinates while staying in the
/// cone. Enumerates all candidate parameters s = a/2 + b√2/4 inside the
/// exact bounds and also confirms the integer argument 0 ≤ 2a²−b² < 1 for
/// every candidate satisfying the two product inequalities.
pub fn check_non_subtractable(alpha: &[AlgebraicNumber]) -> Result<bool> {
    if alpha.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: alpha.len() });
    }
    let ctx = alpha[0].context().clone();
    let s2 = root2(&ctx);
    // s + conj(s) = a, so 0 <= a <= alpha1 + alpha4/2; s - conj(s) = b sqrt2/2
    // is bounded by the same inequalities.
    let a_hi: i64 = {
        let bound = alpha[0].add(&alpha[3].scale(&rat(1, 2)));
        i64::try_from(bound.floor()).map_err(|_| Error::IndexTooLarge(0, 0))? + 1
    };
    let b_abs: i64 = {
        let bound = alpha[0].add(&alpha[3]).mul(&s2);
        i64::try_from(bound.floor()).map_err(|_| Error::IndexTooLarge(0, 0))? + 2
    };
    let mut subtractable = false;
    for a in 0..=a_hi {
        for b in -b_abs..=b_abs {
            if a == 0 && b == 0 {
                continue;
            }
            let s = AlgebraicNumber::new(&ctx, vec![rat(a, 2), rat(b, 4)])?;
            let sc = s.galois_conjugate()?;
            let nonneg = s.sign() >= 0 && sc.sign() >= 0;
            let fits_1 = alpha[0].sub(&sc).sign() >= 0;
            let fits_4 = alpha[3].sub(&s.scale(&rat(2, 1))).sign() >= 0;
            if nonneg && fits_1 && fits_4 {
                // Independent integer confirmation: 2 conj(s) s = (2a²−b²)/4
                // lies in [0, alpha1·alpha4) so the quarter bound forces 0.
                let m = 2 * a * a - b * b;
                let prod4 = alpha[0].mul(&alpha[3]).scale(&rat(4, 1));
                debug_assert!(m >= 0);
                debug_assert!(prod4.sub(&AlgebraicNumber::from_int(&ctx, m)).sign() > 0);
                let fits_3 = alpha[2].sub(&s).sign() >= 0;
                if fits_3 {
                    subtractable = true;
                }
            }
        }
    }
    Ok(!subtractable)
}

/// Parametric boundary family βᵢ = 0 in s: the other eigen-coordinates of an
/// integral boundary point, as exact expressions.
pub fn boundary_form(which: usize, s: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>> {
    let sc = s.galois_conjugate()?;
    let two = rat(2, 1);
    let zero = AlgebraicNumber::zero(s.context());
    Ok(match which {
        1 => vec![zero, sc.neg(), s.clone(), s.clone()],
        2 => vec![sc, zero, s.clone(), s.scale(&two)],
        3 => vec![s.clone(), s.clone(), zero, sc],
        4 => vec![s.clone(), s.scale(&two), sc.neg(), zero],
        _ => return Err(Error::InvalidContext("boundary family index must be 1..=4".into())),
    })
}

/// Image M·β of the boundary family point with s = a/2 + b√2/4, if integral.
pub fn boundary_point(which: usize, a: i64, b: i64) -> Result<Option<ZVec>> {
    let ctx = sqrt2_ctx();
    let s = AlgebraicNumber::new(&ctx, vec![rat(a, 2), rat(b, 4)])?;
    let beta = boundary_form(which, &s)?;
    let img = ray_matrix_4d(&ctx)?.mul_vec(&beta)?;
    let mut out = Vec::with_capacity(4);
    for e in img {
        if !e.is_rational() || !e.coeffs()[0].is_integer() {
            return Ok(None);
        }
        out.push(e.coeffs()[0].to_integer());
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use crate::linalg::verify_eigen;
    use crate::symmetry;

    fn z(vals: &[i64]) -> ZVec {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn fermat_scan_trivial_hits() {
        let res = fermat_scan(2, 100).unwrap();
        assert!(res.all_trivial());
        // Every z contributes exactly the two axis hits (x,0,z) and (0,z,z).
        assert_eq!(res.hits.len(), 200);
        let res = fermat_scan(3, 50).unwrap();
        assert!(res.all_trivial());
        assert_eq!(res.hits.len(), 100);
    }

    #[test]
    fn fermat_scan_k1_rejected_and_cap() {
        assert!(fermat_scan(1, 10).is_err());
        assert!(fermat_scan(2, FERMAT_ZMAX_CAP + 1).is_err());
    }

    #[test]
    fn rays_are_block_eigenvectors() {
        let ctx = sqrt2_ctx();
        let a = block_matrix_4d(&ctx);
        let u = rays_4d(&ctx);
        let lam_plus = AlgebraicNumber::new(&ctx, vec![rat(3, 1), rat(2, 1)]).unwrap();
        let lam_minus = lam_plus.galois_conjugate().unwrap();
        assert!(verify_eigen(&a, &u[0], &lam_plus));
        assert!(verify_eigen(&a, &u[1], &lam_plus));
        assert!(verify_eigen(&a, &u[2], &lam_minus));
        assert!(verify_eigen(&a, &u[3], &lam_minus));
        assert!(!ray_matrix_4d(&ctx).unwrap().det().unwrap().is_zero());
    }

    #[test]
    fn r4_combination() {
        // (1,0,1,0) = u1/2 + u2/2 + u4/2.
        let ctx = sqrt2_ctx();
        let m = ray_matrix_4d(&ctx).unwrap();
        let half = AlgebraicNumber::from_rat(&ctx, rat(1, 2));
        let zero = AlgebraicNumber::zero(&ctx);
        let img = m.mul_vec(&[half.clone(), half.clone(), zero, half]).unwrap();
        let want: Vec<AlgebraicNumber> =
            [1, 0, 1, 0].iter().map(|&v| AlgebraicNumber::from_int(&ctx, v)).collect();
        assert_eq!(img, want);
    }

    #[test]
    fn cones_construct_pointed() {
        let c = build_4d_cone().unwrap();
        assert!(c.is_simple());
        assert!(c.pointed_witness().is_some());
        let s = build_4d_subcone().unwrap();
        assert!(s.is_simple());
        assert!(s.pointed_witness().is_some());
    }

    #[test]
    fn family_point_base_case() {
        let fc = family_point(0).unwrap();
        assert_eq!(fc.v, z(&[0, 4, -2, 8]));
        assert_eq!(
            fc.ints,
            [BigInt::from(0), BigInt::from(1), BigInt::from(-1), BigInt::from(2)]
        );
        assert!(fc.passes(), "failed checks: {:?}", fc.checks);
    }

    #[test]
    fn family_points_all_pass() {
        let mut prev_ratio: Option<AlgebraicNumber> = None;
        for n1 in 0..=10 {
            let fc = family_point(n1).unwrap();
            assert!(fc.passes(), "n1={n1}: {:?}", fc.checks);
            assert!(check_non_subtractable(&fc.alpha).unwrap(), "n1={n1}");
            // The eigen-ratio strictly increases with n1.
            let ratio_num = fc.alpha[0].clone();
            let ratio_den = fc.alpha[1].clone();
            if let Some(prev) = prev_ratio {
                // alpha1/alpha2 > prev  <=>  alpha1 > prev * alpha2 (alpha2 > 0)
                assert!(ratio_num.sub(&prev.mul(&ratio_den)).sign() > 0, "n1={n1}");
            }
            prev_ratio = Some(ratio_num.div(&ratio_den).unwrap());
        }
        assert!(family_point(FAMILY_N1_CAP + 1).is_err());
    }

    #[test]
    fn perturbed_point_is_subtractable() {
        let alpha = perturbed_family_alpha(0).unwrap();
        assert!(!check_non_subtractable(&alpha).unwrap());
    }

    #[test]
    fn boundary_family_examples() {
        // beta2 = 0, s = 1/2 gives M beta = (1,0,0,0).
        assert_eq!(boundary_point(2, 1, 0).unwrap().unwrap(), z(&[1, 0, 0, 0]));
        // beta1 = 0, s = 0 gives zero.
        assert_eq!(boundary_point(1, 0, 0).unwrap().unwrap(), z(&[0, 0, 0, 0]));
        // beta4 = 0, s = 1/2 is integral.
        assert!(boundary_point(4, 1, 0).unwrap().is_some());
    }

    #[test]
    fn boundary_families_always_integral() {
        for which in 1..=4 {
            for a in -5..=5 {
                for b in -5..=5 {
                    assert!(
                        boundary_point(which, a, b).unwrap().is_some(),
                        "family {which}, a={a}, b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn subcone_symmetries_are_block_pell() {
        let c = build_4d_subcone().unwrap();
        let found = symmetry::search_eigen_symmetry(&c, 4).unwrap();
        assert!(!found.is_empty());
        let ctx = c.context().clone();
        let mut saw_a = false;
        for m in &found {
            let rows = m.to_rat_matrix().unwrap();
            let e = |i: usize, j: usize| -> BigInt {
                assert!(rows[i][j].is_integer());
                rows[i][j].to_integer()
            };
            let x = e(0, 0);
            let y = e(0, 1);
            // Block form diag([[x,y],[2y,x]], [[x,y],[2y,x]]).
            let want = [
                [x.clone(), y.clone(), BigInt::zero(), BigInt::zero()],
                [2 * &y, x.clone(), BigInt::zero(), BigInt::zero()],
                [BigInt::zero(), BigInt::zero(), x.clone(), y.clone()],
                [BigInt::zero(), BigInt::zero(), 2 * &y, x.clone()],
            ];
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(e(i, j), want[i][j], "entry ({i},{j})");
                }
            }
            assert_eq!(&x * &x - BigInt::from(2) * &y * &y, BigInt::one());
            if x == BigInt::from(3) && y.magnitude() == BigInt::from(2).magnitude() {
                saw_a = true;
            }
        }
        assert!(saw_a, "expected the Pell generator block among {} matrices", found.len());
        let _ = ctx;
    }
}

//! Pointed polyhedral cones and half-spaces with algebraic extreme rays:
//! construction, normalization, exact membership, ray classification and
//! eigen-coordinates.

use std::sync::Arc;

use num::{BigInt, One, Zero};

use crate::algebraic::{AlgebraicNumber, FieldContext, Rat};
use crate::error::Error;
use crate::linalg::{Matrix, Vector};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    Pointed,
    Halfspace,
}

/// An extreme ray: the caller's representative plus the canonical form with
/// first nonzero coordinate scaled to 1 (used for deduplication only; the
/// original representative drives all geometry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    original: Vector,
    normalized: Vector,
    rational: bool,
}

impl Ray {
    fn new(v: Vector) -> Result<Ray> {
        let lead = v
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidCone("zero ray".into()))?
            .clone();
        let inv = lead.inv()?;
        let normalized: Vector = v.iter().map(|c| c.mul(&inv)).collect();
        let rational = v.iter().all(|c| c.is_rational());
        Ok(Ray { original: v, normalized, rational })
    }

    pub fn dir(&self) -> &[AlgebraicNumber] {
        &self.original
    }

    pub fn normalized(&self) -> &[AlgebraicNumber] {
        &self.normalized
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    /// Primitive integer representative, for rational rays only.
    pub fn primitive_integer(&self) -> Option<Vec<BigInt>> {
        if !self.rational {
            return None;
        }
        let rats: Vec<Rat> = self.original.iter().map(|c| c.to_rat().unwrap()).collect();
        Some(primitive_integer_vector(&rats))
    }
}

/// Scales a rational vector to its primitive integer representative with the
/// same direction.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| num::integer::lcm(acc, r.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    if gcd.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &gcd).collect()
}

#[derive(Debug, Clone)]
pub struct Cone {
    ctx: Arc<FieldContext>,
    dim: usize,
    kind: ConeKind,
    rays: Vec<Ray>,
    simple: bool,
    /// Facet normals n with n.x >= 0 on the cone (pointed, dims 2 and 3).
    facet_normals: Vec<Vector>,
    /// Rational functional strictly positive on every ray (pointed kind).
    pointed_witness: Option<Vec<Rat>>,
}

impl Cone {
    pub fn new(
        ctx: &Arc<FieldContext>,
        dim: usize,
        kind: ConeKind,
        ray_vecs: Vec<Vector>,
    ) -> Result<Cone> {
        if ray_vecs.is_empty() {
            return Err(Error::InvalidCone("a cone needs at least one ray".into()));
        }
        if ray_vecs.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: ray_vecs.iter().map(|r| r.len()).max().unwrap(),
            });
        }
        let rays: Vec<Ray> = ray_vecs.into_iter().map(Ray::new).collect::<Result<_>>()?;
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i].normalized == rays[j].normalized {
                    return Err(Error::InvalidCone(format!(
                        "rays {i} and {j} are proportional"
                    )));
                }
            }
        }
        match kind {
            ConeKind::Halfspace => {
                if dim != 2 || rays.len() != 1 {
                    return Err(Error::InvalidCone(
                        "halfspace kind requires dim 2 and exactly one boundary ray".into(),
                    ));
                }
                Ok(Cone {
                    ctx: Arc::clone(ctx),
                    dim,
                    kind,
                    rays,
                    simple: false,
                    facet_normals: vec![],
                    pointed_witness: None,
                })
            }
            ConeKind::Pointed => {
                let simple = rays.len() == dim && {
                    let m = Matrix::from_columns(ctx, &rays.iter().map(|r| r.original.clone()).collect::<Vec<_>>())?;
                    !m.det()?.is_zero()
                };
                let facet_normals = match dim {
                    2 => facets_2d(ctx, &rays)?,
                    3 => facets_3d(ctx, &rays)?,
                    _ => vec![],
                };
                if dim <= 3 && facet_normals.is_empty() {
                    return Err(Error::NotPointed);
                }
                if dim > 3 && !simple {
                    return Err(Error::InvalidCone(
                        "dimension above 3 supports simple cones only".into(),
                    ));
                }
                let mut cone = Cone {
                    ctx: Arc::clone(ctx),
                    dim,
                    kind,
                    rays,
                    simple,
                    facet_normals,
                    pointed_witness: None,
                };
                cone.pointed_witness = Some(cone.find_pointed_witness()?);
                Ok(cone)
            }
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn pointed_witness(&self) -> Option<&[Rat]> {
        self.pointed_witness.as_deref()
    }

    /// Per-ray rationality flags, in ray order.
    pub fn ray_rationality(&self) -> Vec<bool> {
        self.rays.iter().map(|r| r.rational).collect()
    }

    pub fn rational_ray_count(&self) -> usize {
        self.rays.iter().filter(|r| r.rational).count()
    }

    /// Matrix with the ray representatives as columns (simple cones).
    pub fn ray_matrix(&self) -> Result<Matrix> {
        Matrix::from_columns(
            &self.ctx,
            &self.rays.iter().map(|r| r.original.clone()).collect::<Vec<_>>(),
        )
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        let v: Vector = x
            .iter()
            .map(|r| AlgebraicNumber::from_rat(&self.ctx, r.clone()))
            .collect();
        self.contains_alg(&v)
    }

    /// Exact membership of a field point.
    pub fn contains_alg(&self, x: &[AlgebraicNumber]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        match self.kind {
            ConeKind::Halfspace => {
                let n = self.halfspace_normal()?;
                Ok(dot(&n, x).sign() >= 0)
            }
            ConeKind::Pointed => {
                if self.dim <= 3 {
                    Ok(self
                        .facet_normals
                        .iter()
                        .all(|n| dot(n, x).sign() >= 0))
                } else {
                    // Simple cone: nonnegative eigen-coordinates.
                    let alpha = self.eigen_coordinates_alg(x)?;
                    Ok(alpha.iter().all(|a| a.sign() >= 0))
                }
            }
        }
    }

    /// Fixed orientation normal of a halfspace: perp of the boundary ray,
    /// scaled so the normal's leading entry pattern is deterministic.
    pub fn halfspace_normal(&self) -> Result<Vector> {
        if self.kind != ConeKind::Halfspace {
            return Err(Error::InvalidCone("not a halfspace".into()));
        }
        let r = &self.rays[0].original;
        Ok(vec![r[1].neg(), r[0].clone()])
    }

    /// Coordinates of a rational point in the ray basis (simple cones).
    pub fn eigen_coordinates(&self, x: &[Rat]) -> Result<Vector> {
        let v: Vector = x
            .iter()
            .map(|r| AlgebraicNumber::from_rat(&self.ctx, r.clone()))
            .collect();
        self.eigen_coordinates_alg(&v)
    }

    pub fn eigen_coordinates_alg(&self, x: &[AlgebraicNumber]) -> Result<Vector> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        self.ray_matrix()?.solve(x)
    }

    /// The linear map from the 2n coefficients (a_1,b_1,...,a_n,b_n) of
    /// eigen-coordinates alpha_i = a_i + b_i t (quadratic context) to the
    /// 2n coefficients (rational part, t part) of the coordinates of
    /// M alpha. Integrality of M alpha means: every t-part row evaluates to
    /// zero and every rational-part row to an integer.
    pub fn eigen_lattice_matrix(&self) -> Result<Vec<Vec<Rat>>> {
        if self.ctx.degree() != 2 {
            return Err(Error::NotQuadratic);
        }
        if !self.simple {
            return Err(Error::NotSimple);
        }
        let n = self.dim;
        let m = self.ray_matrix()?;
        // Column 2j (resp. 2j+1) is the image of a_j = 1 (resp. b_j = 1).
        let mut out = vec![vec![Rat::zero(); 2 * n]; 2 * n];
        for j in 0..n {
            for part in 0..2 {
                let alpha: Vector = (0..n)
                    .map(|i| {
                        if i == j {
                            if part == 0 {
                                AlgebraicNumber::one(&self.ctx)
                            } else {
                                AlgebraicNumber::generator(&self.ctx)
                            }
                        } else {
                            AlgebraicNumber::zero(&self.ctx)
                        }
                    })
                    .collect();
                let img = m.mul_vec(&alpha)?;
                for (i, v) in img.iter().enumerate() {
                    out[2 * i][2 * j + part] = v.rat_part();
                    out[2 * i + 1][2 * j + part] = v.irr_part();
                }
            }
        }
        Ok(out)
    }

    /// Rational interior functional: w with w . r > 0 on every ray, found by
    /// rationally rounding an exact interior direction of the dual cone at
    /// increasing denominators and verifying exactly.
    fn find_pointed_witness(&self) -> Result<Vec<Rat>> {
        let interior: Vector = if self.dim <= 3 && !self.facet_normals.is_empty() {
            sum_vectors(&self.ctx, &self.facet_normals, self.dim)
        } else {
            // Simple cone: the rows of M^{-1} are a dual basis; their sum
            // pairs to 1 with every ray.
            let inv = self.ray_matrix()?.inverse()?;
            let rows: Vec<Vector> = (0..self.dim).map(|i| inv.row(i).to_vec()).collect();
            sum_vectors(&self.ctx, &rows, self.dim)
        };
        let mut denom = BigInt::one();
        for _ in 0..64 {
            let cand: Vec<Rat> = interior
                .iter()
                .map(|c| {
                    let scaled = c.scale(&Rat::from_integer(denom.clone()));
                    Rat::new(scaled.floor(), denom.clone())
                })
                .collect();
            let ok = self.rays.iter().all(|r| {
                let v = dot_rat_alg(&cand, &r.original, &self.ctx);
                v.sign() > 0
            });
            if ok {
                return Ok(cand);
            }
            denom *= 2;
        }
        Err(Error::NotPointed)
    }
}

fn dot(a: &[AlgebraicNumber], b: &[AlgebraicNumber]) -> AlgebraicNumber {
    let mut acc = AlgebraicNumber::zero(a[0].context());
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn dot_rat_alg(a: &[Rat], b: &[AlgebraicNumber], ctx: &Arc<FieldContext>) -> AlgebraicNumber {
    let mut acc = AlgebraicNumber::zero(ctx);
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&y.scale(x));
    }
    acc
}

fn sum_vectors(ctx: &Arc<FieldContext>, vs: &[Vector], dim: usize) -> Vector {
    let mut acc = vec![AlgebraicNumber::zero(ctx); dim];
    for v in vs {
        for (a, b) in acc.iter_mut().zip(v) {
            *a = a.add(b);
        }
    }
    acc
}

/// 2D facet normals: each ray's perpendicular, oriented toward the other
/// side of the cone. Fails (empty) when the cone is not pointed/salient.
fn facets_2d(ctx: &Arc<FieldContext>, rays: &[Ray]) -> Result<Vec<Vector>> {
    if rays.len() != 2 {
        return Err(Error::InvalidCone("2D pointed cone needs exactly two rays".into()));
    }
    let mut out = Vec::with_capacity(2);
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        let r = &rays[i].original;
        let other = &rays[j].original;
        let n = vec![r[1].neg(), r[0].clone()];
        let s = dot(&n, other).sign();
        if s == 0 {
            return Ok(vec![]); // opposite rays: not pointed
        }
        let n = if s > 0 { n } else { vec![n[0].neg(), n[1].neg()] };
        out.push(n);
    }
    let _ = ctx;
    Ok(out)
}

fn cross(a: &[AlgebraicNumber], b: &[AlgebraicNumber]) -> Vector {
    vec![
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

/// 3D facet normals from ray cross products: a pair (i,j) spans a facet when
/// all remaining rays sit weakly on one side. Returns empty if some ray
/// violates a facet from inside (non-pointed or bad ray list).
fn facets_3d(ctx: &Arc<FieldContext>, rays: &[Ray]) -> Result<Vec<Vector>> {
    if rays.len() < 3 {
        return Err(Error::InvalidCone("3D pointed cone needs at least three rays".into()));
    }
    let _ = ctx;
    let mut facets: Vec<Vector> = Vec::new();
    let m = rays.len();
    for i in 0..m {
        for j in i + 1..m {
            let n = cross(&rays[i].original, &rays[j].original);
            if n.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut pos = false;
            let mut neg = false;
            for (k, r) in rays.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                match dot(&n, &r.original).sign() {
                    1 => pos = true,
                    -1 => neg = true,
                    _ => {}
                }
            }
            if pos && neg {
                continue;
            }
            let n = if neg {
                n.iter().map(|c| c.neg()).collect()
            } else {
                n
            };
            if !facets.contains(&n) {
                facets.push(n);
            }
        }
    }
    // Pointedness: the facet inequalities must pin down a salient cone; a
    // non-pointed input leaves a ray r with both r and -r feasible.
    for r in rays {
        let neg: Vector = r.original.iter().map(|c| c.neg()).collect();
        if facets.iter().all(|n| dot(n, &neg).sign() >= 0) {
            return Ok(vec![]);
        }
    }
    Ok(facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{rat, rat_int};

    fn example_cone_sqrt2() -> Cone {
        // cone((1, sqrt2), (-1, sqrt2))
        let ctx = FieldContext::sqrt(2).unwrap();
        let r2 = AlgebraicNumber::generator(&ctx);
        let one = AlgebraicNumber::one(&ctx);
        Cone::new(
            &ctx,
            2,
            ConeKind::Pointed,
            vec![vec![one.clone(), r2.clone()], vec![one.neg(), r2]],
        )
        .unwrap()
    }

    #[test]
    fn membership_2d() {
        let c = example_cone_sqrt2();
        assert!(c.contains(&[rat_int(1), rat_int(2)]).unwrap());
        assert!(!c.contains(&[rat_int(1), rat_int(1)]).unwrap());
        assert!(c.contains(&[rat_int(0), rat_int(0)]).unwrap());
        assert!(c.contains(&[rat_int(0), rat_int(5)]).unwrap());
        assert!(!c.contains(&[rat_int(3), rat_int(4)]).unwrap());
    }

    #[test]
    fn rationality_flags() {
        let c = example_cone_sqrt2();
        assert_eq!(c.ray_rationality(), vec![false, false]);
        let ctx = FieldContext::sqrt(2).unwrap();
        let q = Cone::new(
            &ctx,
            2,
            ConeKind::Pointed,
            vec![
                vec![AlgebraicNumber::from_int(&ctx, 2), AlgebraicNumber::from_int(&ctx, 1)],
                vec![AlgebraicNumber::from_int(&ctx, 0), AlgebraicNumber::from_int(&ctx, 1)],
            ],
        )
        .unwrap();
        assert_eq!(q.ray_rationality(), vec![true, true]);
    }

    #[test]
    fn eigen_coordinates_example() {
        let c = example_cone_sqrt2();
        // x = (0,2): alpha = (sqrt2/2, sqrt2/2)
        let alpha = c.eigen_coordinates(&[rat_int(0), rat_int(2)]).unwrap();
        let ctx = c.context();
        let want = AlgebraicNumber::new(ctx, vec![rat(0, 1), rat(1, 2)]).unwrap();
        assert_eq!(alpha, vec![want.clone(), want]);
        // round trip
        let m = c.ray_matrix().unwrap();
        let back = m.mul_vec(&alpha).unwrap();
        assert_eq!(back[0], AlgebraicNumber::zero(ctx));
        assert_eq!(back[1], AlgebraicNumber::from_int(ctx, 2));
        // interior point: both signs positive
        let alpha = c.eigen_coordinates(&[rat_int(2), rat_int(3)]).unwrap();
        assert!(alpha.iter().all(|a| a.sign() > 0));
    }

    #[test]
    fn proportional_rays_rejected() {
        let ctx = FieldContext::rational();
        let res = Cone::new(
            &ctx,
            2,
            ConeKind::Pointed,
            vec![
                vec![AlgebraicNumber::from_int(&ctx, 1), AlgebraicNumber::from_int(&ctx, 2)],
                vec![AlgebraicNumber::from_int(&ctx, 2), AlgebraicNumber::from_int(&ctx, 4)],
            ],
        );
        assert!(res.is_err());
    }

    #[test]
    fn non_pointed_rejected() {
        let ctx = FieldContext::rational();
        let res = Cone::new(
            &ctx,
            2,
            ConeKind::Pointed,
            vec![
                vec![AlgebraicNumber::from_int(&ctx, 1), AlgebraicNumber::from_int(&ctx, 0)],
                vec![AlgebraicNumber::from_int(&ctx, -1), AlgebraicNumber::from_int(&ctx, 0)],
            ],
        );
        assert!(res.is_err());
    }

    #[test]
    fn pointed_witness_positive_on_rays() {
        let c = example_cone_sqrt2();
        let w = c.pointed_witness().unwrap();
        for r in c.rays() {
            let mut acc = AlgebraicNumber::zero(c.context());
            for (wi, ri) in w.iter().zip(r.dir()) {
                acc = acc.add(&ri.scale(wi));
            }
            assert!(acc.sign() > 0);
        }
    }

    #[test]
    fn membership_3d_nonsimple() {
        // Square-based cone over (±1, ±1, 1).
        let ctx = FieldContext::rational();
        let v = |a: i64, b: i64| {
            vec![
                AlgebraicNumber::from_int(&ctx, a),
                AlgebraicNumber::from_int(&ctx, b),
                AlgebraicNumber::from_int(&ctx, 1),
            ]
        };
        let c = Cone::new(
            &ctx,
            3,
            ConeKind::Pointed,
            vec![v(1, 1), v(1, -1), v(-1, 1), v(-1, -1)],
        )
        .unwrap();
        assert!(c.contains(&[rat_int(0), rat_int(0), rat_int(1)]).unwrap());
        assert!(c.contains(&[rat_int(1), rat_int(1), rat_int(1)]).unwrap());
        assert!(!c.contains(&[rat_int(2), rat_int(0), rat_int(1)]).unwrap());
        assert!(!c.contains(&[rat_int(0), rat_int(0), rat_int(-1)]).unwrap());
        assert!(!c.is_simple());
    }

    #[test]
    fn halfspace_membership() {
        let ctx = FieldContext::sqrt(2).unwrap();
        let r2 = AlgebraicNumber::generator(&ctx);
        let h = Cone::new(
            &ctx,
            2,
            ConeKind::Halfspace,
            vec![vec![AlgebraicNumber::one(&ctx), r2]],
        )
        .unwrap();
        // normal is (-sqrt2, 1): points above the line y = sqrt2 x.
        assert!(h.contains(&[rat_int(0), rat_int(1)]).unwrap());
        assert!(h.contains(&[rat_int(-5), rat_int(0)]).unwrap());
        assert!(!h.contains(&[rat_int(1), rat_int(1)]).unwrap());
        assert!(h.contains(&[rat_int(0), rat_int(0)]).unwrap());
    }

    #[test]
    fn semigroup_closure_samples() {
        let c = example_cone_sqrt2();
        let pts = [
            [rat_int(0), rat_int(1)],
            [rat_int(1), rat_int(2)],
            [rat_int(-1), rat_int(2)],
            [rat_int(2), rat_int(3)],
        ];
        for a in &pts {
            for b in &pts {
                if c.contains(a).unwrap() && c.contains(b).unwrap() {
                    let s = [&a[0] + &b[0], &a[1] + &b[1]];
                    assert!(c.contains(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn primitive_integer_vectors() {
        let v = vec![rat(4, 6), rat(2, 3), rat(-2, 1)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(-3)]
        );
    }
}

//! Unimodular symmetries with prescribed eigenrays: the fixing-matrix and
//! switcher constructions in 2D, symmetry-group classification, the 2D /
//! half-space / 3D decision procedures, the brute-force eigen-symmetry
//! search, and verification of user-supplied symmetry matrices.


use num::{BigInt, One, Signed, Zero};

use crate::algebraic::{rat_int, AlgebraicNumber, Rat};
use crate::cone::{Cone, ConeKind};
use crate::error::Error;
use crate::linalg::{is_unimodular, matrix_from_eigenbasis, rat_nullspace, Matrix, Vector};
use crate::pell::{minimal_norm_one_unit, smallest_integral_power, INTEGRAL_POWER_CAP};
use crate::Result;

pub const SEARCH_BOUND_MAX: u64 = 10;
const SWITCHER_SEARCH_BOUND: i64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupClass {
    Trivial,
    Z2,
    Z,
    InfiniteDihedral,
}

impl GroupClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupClass::Trivial => "trivial",
            GroupClass::Z2 => "Z2",
            GroupClass::Z => "Z",
            GroupClass::InfiniteDihedral => "infinite_dihedral",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetryCertificate {
    pub fixing_generator: Option<Matrix>,
    /// Eigenvalues of the fixing generator, in ray order.
    pub eigenvalues: Vec<AlgebraicNumber>,
    pub switchers: Vec<Matrix>,
    pub group_class: GroupClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    FgCertified,
    NotFgCertified,
    Unknown,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::FgCertified => "FG_certified",
            Status::NotFgCertified => "notFG_certified",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub reason_tag: String,
    pub reason: String,
    pub certificate: Option<SymmetryCertificate>,
}

impl Verdict {
    fn new(status: Status, tag: &str, reason: impl Into<String>) -> Verdict {
        Verdict {
            status,
            reason_tag: tag.into(),
            reason: reason.into(),
            certificate: None,
        }
    }

    fn with_certificate(mut self, cert: SymmetryCertificate) -> Verdict {
        self.certificate = Some(cert);
        self
    }
}

// ---------------------------------------------------------------------------
// Helpers

/// Degree of the minimal polynomial of a field element over Q (1..=4),
/// found as the first linear dependence among its powers.
pub fn element_degree(x: &AlgebraicNumber) -> usize {
    let d = x.context().degree();
    let mut powers: Vec<Vec<Rat>> = vec![AlgebraicNumber::one(x.context()).coeffs().to_vec()];
    let mut cur = AlgebraicNumber::one(x.context());
    for k in 1..=d {
        cur = cur.mul(x);
        powers.push(cur.coeffs().to_vec());
        // Dependence among 1, x, ..., x^k: nullspace of the (d x (k+1))
        // coefficient matrix (columns are the powers).
        let rows: Vec<Vec<Rat>> = (0..d)
            .map(|i| powers.iter().map(|p| p[i].clone()).collect())
            .collect();
        if !rat_nullspace(&rows).is_empty() {
            return k;
        }
    }
    d
}

/// Exact lexicographic comparison of two vectors at the first differing
/// coordinate.
fn ray_exactly_greater(a: &[AlgebraicNumber], b: &[AlgebraicNumber]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_exact(y) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

fn conjugate_vector(v: &[AlgebraicNumber]) -> Result<Vector> {
    v.iter().map(|c| c.galois_conjugate()).collect()
}

/// Largest minimal-polynomial degree over all entries of all rays.
fn max_ray_degree(c: &Cone) -> usize {
    c.rays()
        .iter()
        .flat_map(|r| r.dir().iter())
        .map(element_degree)
        .max()
        .unwrap_or(1)
}

/// True when the two rays of a 2D cone form a Galois-conjugate pair in a
/// quadratic context (normalized representatives map onto each other).
fn is_conjugate_pair(c: &Cone) -> Result<bool> {
    if c.context().degree() != 2 {
        return Ok(false);
    }
    let n0 = conjugate_vector(c.rays()[0].normalized())?;
    Ok(n0 == c.rays()[1].normalized())
}

/// The eigenvalue of A on u, when u is an exact eigenvector.
pub fn eigenvalue_on(a: &Matrix, u: &[AlgebraicNumber]) -> Option<AlgebraicNumber> {
    let au = a.mul_vec(u).ok()?;
    let i = u.iter().position(|c| !c.is_zero())?;
    let lambda = au[i].div(&u[i]).ok()?;
    for (x, y) in au.iter().zip(u) {
        if !x.sub(&y.mul(&lambda)).is_zero() {
            return None;
        }
    }
    Some(lambda)
}

// ---------------------------------------------------------------------------
// 2D fixing matrix

/// Minimal non-identity unimodular matrix fixing both rays of a 2D pointed
/// cone with positive eigenvalues, or None when no such matrix exists.
///
/// Rational rays force eigenvalue 1 (hence the identity); a mixed
/// rational/irrational pair or a non-conjugate irrational pair admits no
/// solution; a Galois-conjugate pair reduces to the Pell unit of the
/// quadratic field, raised to the smallest power that lands in the integer
/// matrices.
pub fn find_fixing_matrix_2d(c: &Cone) -> Result<Option<(Matrix, Vec<AlgebraicNumber>)>> {
    if c.dim() != 2 || c.kind() != ConeKind::Pointed {
        return Err(Error::InvalidCone("find_fixing_matrix_2d needs a 2D pointed cone".into()));
    }
    if c.rational_ray_count() >= 1 {
        // With any rational eigenray the eigenvalue there is a positive
        // rational with rational inverse-determinant partner, forcing 1 and
        // with it the identity on the second independent eigenray.
        return Ok(None);
    }
    if c.context().degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    if !is_conjugate_pair(c)? {
        return Ok(None);
    }
    let unit = minimal_norm_one_unit(c.context())?;
    let u = c.ray_matrix()?;
    // Canonical orientation: the expanding eigenvalue goes to the ray whose
    // normalized representative is exactly greater at the first differing
    // coordinate (picking the inverse otherwise).
    let lambda = if ray_exactly_greater(c.rays()[0].normalized(), c.rays()[1].normalized()) {
        vec![unit.clone(), unit.galois_conjugate()?]
    } else {
        vec![unit.galois_conjugate()?, unit.clone()]
    };
    let a0 = matrix_from_eigenbasis(&u, &lambda)?;
    let (k, a) = smallest_integral_power(&a0, INTEGRAL_POWER_CAP)?;
    let eigs = vec![lambda[0].pow(k), lambda[1].pow(k)];
    debug_assert!(is_unimodular(&a));
    Ok(Some((a, eigs)))
}

// ---------------------------------------------------------------------------
// 2D switcher

/// Involutory unimodular matrix mapping each ray of a 2D pointed cone onto
/// the other with positive scale, or None.
pub fn find_switcher_2d(c: &Cone) -> Result<Option<Matrix>> {
    if c.dim() != 2 || c.kind() != ConeKind::Pointed {
        return Err(Error::InvalidCone("find_switcher_2d needs a 2D pointed cone".into()));
    }
    let ctx = c.context();
    // Shear so both rays have nonzero first coordinate (slopes finite).
    let shear_k = (0..3)
        .find(|&k| {
            c.rays().iter().all(|r| {
                let x = r.dir()[0].add(&r.dir()[1].scale(&rat_int(k)));
                !x.is_zero()
            })
        })
        .expect("some shear in 0..3 clears both first coordinates");
    let t = Matrix::from_int_rows(ctx, &[vec![1, shear_k], vec![0, 1]]);
    let t_inv = Matrix::from_int_rows(ctx, &[vec![1, -shear_k], vec![0, 1]]);
    let v1 = t.mul_vec(c.rays()[0].dir())?;
    let v2 = t.mul_vec(c.rays()[1].dir())?;
    let s1 = v1[1].div(&v1[0])?;
    let s2 = v2[1].div(&v2[0])?;
    let sigma = s1.add(&s2);
    let pi = s1.mul(&s2);
    // An integer switcher forces rational slope sum and product.
    let (Some(sigma), Some(pi)) = (sigma.to_rat(), pi.to_rat()) else {
        return Ok(None);
    };
    let b_range = -SWITCHER_SEARCH_BOUND..=SWITCHER_SEARCH_BOUND;
    let mut candidates: Vec<(Vec<BigInt>, Matrix)> = Vec::new();
    for a in b_range.clone() {
        for b in b_range.clone() {
            // Parallelism of Q v1 with v2 pins c; involution pins a^2 + bc.
            let cc = &sigma * Rat::from_integer(BigInt::from(a))
                + &pi * Rat::from_integer(BigInt::from(b));
            if !cc.denom().is_one() {
                continue;
            }
            let a2bc = Rat::from_integer(BigInt::from(a * a)) + &cc * Rat::from_integer(BigInt::from(b));
            if !a2bc.is_one() {
                continue;
            }
            let c_int: i64 = match cc.numer().to_string().parse() {
                Ok(v) => v,
                Err(_) => continue,
            };
            let q_sheared = Matrix::from_int_rows(ctx, &[vec![a, b], vec![c_int, -a]]);
            let q = t_inv.mul(&q_sheared)?.mul(&t)?;
            if q.is_identity() {
                continue;
            }
            if switches_rays(&q, c)? {
                debug_assert!(q.mul(&q)?.is_identity());
                debug_assert!(is_unimodular(&q));
                let key: Vec<BigInt> = (0..2)
                    .flat_map(|i| (0..2).map(move |j| (i, j)))
                    .map(|(i, j)| q.at(i, j).to_rat().unwrap().to_integer())
                    .collect();
                candidates.push((key, q));
            }
        }
    }
    // Smallest by maximal absolute entry, ties broken lexicographically.
    candidates.sort_by_key(|(key, _)| {
        (key.iter().map(|v| v.abs()).max().unwrap(), key.clone())
    });
    Ok(candidates.into_iter().next().map(|(_, q)| q))
}

/// Q maps ray 0 onto ray 1 and ray 1 onto ray 0, with positive scales.
fn switches_rays(q: &Matrix, c: &Cone) -> Result<bool> {
    for (from, to) in [(0usize, 1usize), (1, 0)] {
        let img = q.mul_vec(c.rays()[from].dir())?;
        let target = c.rays()[to].dir();
        let i = target.iter().position(|x| !x.is_zero()).unwrap();
        if img[i].is_zero() {
            return Ok(false);
        }
        let mu = img[i].div(&target[i])?;
        if mu.sign() <= 0 {
            return Ok(false);
        }
        for (x, y) in img.iter().zip(target) {
            if !x.sub(&y.mul(&mu)).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Classification and decisions

pub fn classify_group_2d(c: &Cone) -> Result<SymmetryCertificate> {
    let fixing = match find_fixing_matrix_2d(c) {
        Ok(f) => f,
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let switcher = find_switcher_2d(c)?;
    let group_class = match (&fixing, &switcher) {
        (None, None) => GroupClass::Trivial,
        (None, Some(_)) => GroupClass::Z2,
        (Some(_), None) => GroupClass::Z,
        (Some(_), Some(_)) => GroupClass::InfiniteDihedral,
    };
    let (fixing_generator, eigenvalues) = match fixing {
        Some((a, e)) => (Some(a), e),
        None => (None, vec![]),
    };
    Ok(SymmetryCertificate {
        fixing_generator,
        eigenvalues,
        switchers: switcher.into_iter().collect(),
        group_class,
    })
}

/// Finite-generation decision for a 2D pointed cone.
pub fn decide_2d(c: &Cone) -> Result<Verdict> {
    if c.dim() != 2 || c.kind() != ConeKind::Pointed {
        return Err(Error::InvalidCone("decide_2d needs a 2D pointed cone".into()));
    }
    if c.rational_ray_count() == 2 {
        let cert = classify_group_2d(c)?;
        return Ok(
            Verdict::new(Status::FgCertified, "rational_rays", "both extreme rays are rational")
                .with_certificate(cert),
        );
    }
    if c.rational_ray_count() == 1 {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "mixed_rationality",
            "one rational and one irrational ray: a rational eigenray forces eigenvalue 1, \
             leaving only the identity as a candidate symmetry",
        ));
    }
    if max_ray_degree(c) > 2 {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "slope_degree_exceeds_quadratic",
            "an eigenvector direction of an integer 2x2 matrix has degree at most 2 over Q",
        ));
    }
    if c.context().degree() != 2 {
        return Ok(Verdict::new(
            Status::Unknown,
            "context_degree_unsupported",
            "quadratic ray data presented inside a higher-degree context is not analyzed",
        ));
    }
    if !is_conjugate_pair(c)? {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "nonconjugate_pair",
            "irrational eigenrays of an integer 2x2 matrix form a Galois-conjugate pair; \
             these rays do not",
        ));
    }
    match find_fixing_matrix_2d(c) {
        Ok(Some(_)) => {
            let cert = classify_group_2d(c)?;
            Ok(Verdict::new(
                Status::FgCertified,
                "fixing_matrix",
                "a non-identity unimodular matrix fixes both rays with positive eigenvalues",
            )
            .with_certificate(cert))
        }
        Ok(None) => unreachable!("conjugate pair handled above"),
        Err(Error::CapExceeded { cap, .. }) => Ok(Verdict::new(
            Status::Unknown,
            "integral_power_cap",
            format!("no integral power of the unit matrix found within cap {cap}"),
        )),
        Err(e) => Err(e),
    }
}

/// Dispatches to the decision procedure matching the cone's kind and
/// dimension. Dimensions above 3 have no complete procedure and report
/// unknown.
pub fn decide(c: &Cone) -> Result<Verdict> {
    match c.kind() {
        ConeKind::Halfspace => decide_halfspace(c),
        ConeKind::Pointed => match c.dim() {
            2 => decide_2d(c),
            3 => decide_3d(c),
            _ => Ok(Verdict::new(
                Status::Unknown,
                "dimension_undecided",
                "no complete decision procedure is available in dimension 4 and above",
            )),
        },
    }
}

/// Finite-generation decision for a half-space in the plane, given its
/// boundary line generator.
pub fn decide_halfspace(c: &Cone) -> Result<Verdict> {
    if c.kind() != ConeKind::Halfspace {
        return Err(Error::InvalidCone("decide_halfspace needs a halfspace".into()));
    }
    let r = &c.rays()[0];
    if r.is_rational() {
        return Ok(Verdict::new(
            Status::FgCertified,
            "rational_boundary",
            "the boundary line is rational",
        ));
    }
    if max_ray_degree(c) > 2 {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "slope_degree_exceeds_quadratic",
            "an eigenvector direction of an integer 2x2 matrix has degree at most 2 over Q",
        ));
    }
    if c.context().degree() != 2 {
        return Ok(Verdict::new(
            Status::Unknown,
            "context_degree_unsupported",
            "quadratic boundary data presented inside a higher-degree context is not analyzed",
        ));
    }
    // Pair the boundary ray with its conjugate direction and apply the same
    // Pell-unit construction; the determinant is the unit norm +1.
    let conj = conjugate_vector(r.dir())?;
    let u = Matrix::from_columns(c.context(), &[r.dir().to_vec(), conj])?;
    let unit = minimal_norm_one_unit(c.context())?;
    let lambda = vec![unit.clone(), unit.galois_conjugate()?];
    let a0 = matrix_from_eigenbasis(&u, &lambda)?;
    match smallest_integral_power(&a0, INTEGRAL_POWER_CAP) {
        Ok((k, a)) => {
            debug_assert!(is_unimodular(&a));
            let cert = SymmetryCertificate {
                fixing_generator: Some(a),
                eigenvalues: vec![unit.pow(k), unit.galois_conjugate()?.pow(k)],
                switchers: vec![],
                group_class: GroupClass::Z,
            };
            Ok(Verdict::new(
                Status::FgCertified,
                "boundary_fixing_matrix",
                "a det +1 non-identity unimodular matrix has the boundary generator as an \
                 eigenvector with positive eigenvalue",
            )
            .with_certificate(cert))
        }
        Err(Error::CapExceeded { cap, .. }) => Ok(Verdict::new(
            Status::Unknown,
            "integral_power_cap",
            format!("no integral power of the unit matrix found within cap {cap}"),
        )),
        Err(e) => Err(e),
    }
}

/// Finite-generation decision for a 3D pointed cone.
pub fn decide_3d(c: &Cone) -> Result<Verdict> {
    if c.dim() != 3 || c.kind() != ConeKind::Pointed {
        return Err(Error::InvalidCone("decide_3d needs a 3D pointed cone".into()));
    }
    let m = c.rays().len();
    let k = c.rational_ray_count();
    if k == m {
        return Ok(Verdict::new(
            Status::FgCertified,
            "rational_rays",
            "all extreme rays are rational",
        ));
    }
    if !c.is_simple() {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "nonsimple_irrational",
            "a finitely generated cone with an irrational ray must be simple; this one has \
             more rays than its dimension",
        ));
    }
    // Simple: exactly three rays.
    match k {
        2 => Ok(Verdict::new(
            Status::NotFgCertified,
            "two_rational_rays",
            "two rational eigenrays force two rational eigenvalues; the remaining eigenvalue \
             is then rational as well and the irrational ray would have to span a rational \
             eigenspace, which only a repeated eigenvalue allows — contradicting eigenvalue \
             distinctness",
        )),
        1 => decide_3d_one_rational(c),
        0 => decide_3d_no_rational(c),
        _ => unreachable!("k == m handled above"),
    }
}

fn decide_3d_one_rational(c: &Cone) -> Result<Verdict> {
    let ctx = c.context();
    let rat_idx = c.rays().iter().position(|r| r.is_rational()).unwrap();
    let irr: Vec<usize> = (0..3).filter(|&i| i != rat_idx).collect();
    if max_ray_degree(c) > 2 {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "irrational_degree_exceeds_quadratic",
            "with one rational eigenray the remaining eigenvalues satisfy a quadratic over Q, \
             so the irrational ray directions have degree at most 2",
        ));
    }
    if ctx.degree() != 2 {
        return Ok(Verdict::new(
            Status::Unknown,
            "context_degree_unsupported",
            "quadratic ray data presented inside a higher-degree context is not analyzed",
        ));
    }
    let n1 = conjugate_vector(c.rays()[irr[0]].normalized())?;
    if n1 != c.rays()[irr[1]].normalized() {
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "nonconjugate_pair",
            "the two irrational eigenrays of an integer matrix with one rational eigenray \
             form a Galois-conjugate pair; these rays do not",
        ));
    }
    // Identity on the rational ray, Pell-unit action on the conjugate plane.
    let cols = vec![
        c.rays()[rat_idx].dir().to_vec(),
        c.rays()[irr[0]].dir().to_vec(),
        c.rays()[irr[1]].dir().to_vec(),
    ];
    let u = Matrix::from_columns(ctx, &cols)?;
    let unit = minimal_norm_one_unit(ctx)?;
    let (l1, l2) = if ray_exactly_greater(
        c.rays()[irr[0]].normalized(),
        c.rays()[irr[1]].normalized(),
    ) {
        (unit.clone(), unit.galois_conjugate()?)
    } else {
        (unit.galois_conjugate()?, unit.clone())
    };
    let lambda = vec![AlgebraicNumber::one(ctx), l1.clone(), l2.clone()];
    let a0 = matrix_from_eigenbasis(&u, &lambda)?;
    match smallest_integral_power(&a0, INTEGRAL_POWER_CAP) {
        Ok((kk, a)) => {
            debug_assert!(is_unimodular(&a));
            // Eigenvalues in ray order.
            let mut eigs = vec![AlgebraicNumber::one(ctx); 3];
            eigs[irr[0]] = l1.pow(kk);
            eigs[irr[1]] = l2.pow(kk);
            let cert = SymmetryCertificate {
                fixing_generator: Some(a),
                eigenvalues: eigs,
                switchers: vec![],
                group_class: GroupClass::Z,
            };
            Ok(Verdict::new(
                Status::FgCertified,
                "block_fixing_matrix",
                "identity on the rational ray and a Pell unit on the conjugate plane give a \
                 non-identity unimodular matrix with distinct positive eigenvalues",
            )
            .with_certificate(cert))
        }
        Err(Error::CapExceeded { cap, .. }) => Ok(Verdict::new(
            Status::Unknown,
            "integral_power_cap",
            format!("no integral power of the unit matrix found within cap {cap}"),
        )),
        Err(e) => Err(e),
    }
}

fn decide_3d_no_rational(c: &Cone) -> Result<Verdict> {
    if c.context().degree() == 2 {
        // The characteristic polynomial of a candidate symmetry is a cubic
        // over Q: its roots are one rational value plus a conjugate pair.
        // The rational eigenvalue owns a rational eigenray, but every ray
        // here is irrational.
        return Ok(Verdict::new(
            Status::NotFgCertified,
            "no_rational_eigenray",
            "a 3x3 integer matrix has a rational eigenvalue with a rational eigenray; a \
             simple cone with three irrational quadratic rays leaves it no home",
        ));
    }
    // Cubic (or quartic-context) ray data: probe with the bounded search.
    let found = search_eigen_symmetry(c, 5)?;
    for a in found {
        if a.is_identity() {
            continue;
        }
        let report = verify_supplied(c, &a);
        if report.passes() {
            let eigs = report.eigenvalues.into_iter().map(Option::unwrap).collect();
            let cert = SymmetryCertificate {
                fixing_generator: Some(a),
                eigenvalues: eigs,
                switchers: vec![],
                group_class: GroupClass::Z,
            };
            return Ok(Verdict::new(
                Status::FgCertified,
                "searched_fixing_matrix",
                "the bounded search produced a verified non-identity unimodular symmetry",
            )
            .with_certificate(cert));
        }
    }
    Ok(Verdict::new(
        Status::Unknown,
        "search_exhausted",
        "no symmetry found within the bounded search; absence within a bound is not a proof",
    ))
}

// ---------------------------------------------------------------------------
// Brute-force eigen-symmetry search

/// All integer matrices with entries bounded by `entry_bound` that are
/// unimodular and have every ray of the cone as an eigenvector with a
/// positive eigenvalue (the identity included), sorted by entries.
///
/// The eigenvector conditions are linear in the matrix entries, so the
/// search enumerates integer points of the exact rational solution space
/// instead of all (2b+1)^(n^2) integer matrices.
pub fn search_eigen_symmetry(c: &Cone, entry_bound: u64) -> Result<Vec<Matrix>> {
    if entry_bound > SEARCH_BOUND_MAX {
        return Err(Error::BoundTooLarge(entry_bound, SEARCH_BOUND_MAX));
    }
    let n = c.dim();
    if n > 4 {
        return Err(Error::DimensionTooLarge(n, 4));
    }
    let ctx = c.context();
    let deg = ctx.degree();
    // Rows: for each ray u and coordinate pair i<j, the proportionality
    // condition (Au)_i u_j - (Au)_j u_i = 0, split into `deg` rational
    // equations. Unknowns: entries of A, row-major.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for ray in c.rays() {
        let u = ray.dir();
        for i in 0..n {
            for j in i + 1..n {
                let mut coeff = vec![AlgebraicNumber::zero(ctx); n * n];
                for k in 0..n {
                    coeff[i * n + k] = coeff[i * n + k].add(&u[k].mul(&u[j]));
                    coeff[j * n + k] = coeff[j * n + k].sub(&u[k].mul(&u[i]));
                }
                for comp in 0..deg {
                    let row: Vec<Rat> = coeff.iter().map(|c| c.coeffs()[comp].clone()).collect();
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let basis = rat_nullspace(&rows);
    let dim = basis.len();
    if dim == 0 {
        return Ok(vec![]);
    }
    let span = 2 * entry_bound + 1;
    if (span as f64).powi(dim as i32) > 5e7 {
        return Err(Error::BoundTooLarge(entry_bound, SEARCH_BOUND_MAX));
    }
    // Each basis vector from the RREF nullspace has value 1 at its own free
    // position and 0 at the others, so integer values at the free positions
    // enumerate all candidate solutions.
    let bound_rat = Rat::from_integer(BigInt::from(entry_bound));
    let mut results: Vec<(Vec<BigInt>, Matrix)> = Vec::new();
    let lo = -(entry_bound as i64);
    let hi = entry_bound as i64;
    let mut coeffs = vec![lo; dim];
    'outer: loop {
        let mut entries = vec![Rat::zero(); n * n];
        for (t, b) in coeffs.iter().zip(&basis) {
            for (e, v) in entries.iter_mut().zip(b) {
                *e += v * Rat::from_integer(BigInt::from(*t));
            }
        }
        let ok = entries
            .iter()
            .all(|e| e.denom().is_one() && e.numer().abs() <= *bound_rat.numer());
        if ok {
            let ints: Vec<BigInt> = entries.iter().map(|e| e.numer().clone()).collect();
            let m = Matrix::from_rows(
                ctx,
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                AlgebraicNumber::from_rat(
                                    ctx,
                                    Rat::from_integer(ints[i * n + j].clone()),
                                )
                            })
                            .collect()
                    })
                    .collect(),
            )?;
            if is_unimodular(&m)
                && c.rays().iter().all(|r| {
                    eigenvalue_on(&m, r.dir()).map_or(false, |l| l.sign() > 0)
                })
            {
                results.push((ints, m));
            }
        }
        for k in 0..dim {
            coeffs[k] += 1;
            if coeffs[k] <= hi {
                continue 'outer;
            }
            coeffs[k] = lo;
        }
        break;
    }
    results.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(results.into_iter().map(|(_, m)| m).collect())
}

// ---------------------------------------------------------------------------
// Verification of supplied matrices

#[derive(Debug, Clone)]
pub struct SuppliedReport {
    pub integer: bool,
    pub unimodular: bool,
    pub non_identity: bool,
    /// Per ray: the eigenvalue when the ray is an exact eigenvector.
    pub eigenvalues: Vec<Option<AlgebraicNumber>>,
    pub all_eigen: bool,
    pub all_positive: bool,
    /// Distinctness among the eigenvalues carried by irrational rays.
    pub distinct_irrational: bool,
}

impl SuppliedReport {
    pub fn passes(&self) -> bool {
        self.integer
            && self.unimodular
            && self.non_identity
            && self.all_eigen
            && self.all_positive
            && self.distinct_irrational
    }

    pub fn lines(&self) -> Vec<String> {
        let f = |ok: bool| if ok { "pass" } else { "FAIL" };
        vec![
            format!("integer entries: {}", f(self.integer)),
            format!("unimodular: {}", f(self.unimodular)),
            format!("non-identity: {}", f(self.non_identity)),
            format!("every ray an eigenvector: {}", f(self.all_eigen)),
            format!("all eigenvalues positive: {}", f(self.all_positive)),
            format!(
                "distinct eigenvalues on irrational rays: {}",
                f(self.distinct_irrational)
            ),
        ]
    }
}

/// Report-style verification of a user-supplied symmetry candidate.
pub fn verify_supplied(c: &Cone, a: &Matrix) -> SuppliedReport {
    let integer = a.is_integer();
    let unimodular = is_unimodular(a);
    let non_identity = !a.is_identity();
    let eigenvalues: Vec<Option<AlgebraicNumber>> = c
        .rays()
        .iter()
        .map(|r| eigenvalue_on(a, r.dir()))
        .collect();
    let all_eigen = eigenvalues.iter().all(|e| e.is_some());
    let all_positive = eigenvalues
        .iter()
        .flatten()
        .all(|l| l.sign() > 0);
    let mut distinct_irrational = true;
    let irr: Vec<&AlgebraicNumber> = c
        .rays()
        .iter()
        .zip(&eigenvalues)
        .filter(|(r, _)| !r.is_rational())
        .filter_map(|(_, e)| e.as_ref())
        .collect();
    for i in 0..irr.len() {
        for j in i + 1..irr.len() {
            if irr[i] == irr[j] {
                distinct_irrational = false;
            }
        }
    }
    SuppliedReport {
        integer,
        unimodular,
        non_identity,
        eigenvalues,
        all_eigen,
        all_positive,
        distinct_irrational,
    }
}

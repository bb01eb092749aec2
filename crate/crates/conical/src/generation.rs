//! Generating-set construction and exact point decomposition.
//!
//! A generating set for a cone `C` consists of a rational sub-cone `P ⊆ C`,
//! the Hilbert basis `R` of `P`, and a finite list of unimodular symmetries
//! `G`. Every integer point of `C` is balanced into `P` by a word in `G`,
//! decomposed over `R` there, and transported back, giving an exact
//! representation `x = Σ mᵢ · Wᵢ · rᵢ` with nonnegative integer
//! multiplicities `mᵢ`, words `Wᵢ` in the generators, and `rᵢ ∈ R`.

use std::sync::Arc;

use num::{BigInt, Signed, Zero};

use crate::algebraic::{AlgebraicNumber, FieldContext, Rat};
use crate::cone::{primitive_integer_vector, Cone};
use crate::error::Error;
use crate::hilbert::{decompose_nonneg, hilbert_basis, HilbertBasis, RationalCone, ZVec};
use crate::linalg::{is_unimodular, Matrix};
use crate::Result;

/// Cap on the balancing word search.
pub const BALANCE_CAP: u64 = 1_000;
/// Cap on basis extensions recorded by saturation.
pub const SATURATION_CAP: u64 = 64;
/// Cap on the coefficient rings scanned for a rational seed point.
pub const SEED_RADIUS_CAP: i64 = 64;
/// Exponent bound for the multiplicative-relation test on eigenvalues.
pub const LOG_RELATION_BOUND: i64 = 8;
/// Cap on the verification box bound.
pub const VERIFY_BOUND_CAP: u64 = 1_000;

/// A rational sub-cone, its Hilbert basis, and the symmetry generators,
/// together with any saturation extensions recorded while decomposing.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    pub p: RationalCone,
    pub basis: HilbertBasis,
    pub generators: Vec<Matrix>,
    pub extensions: Vec<ZVec>,
}

/// One term `multiplicity · W(word) · element` of a representation, where
/// `word[j]` is the exponent of the j-th generator in the word `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTerm {
    pub multiplicity: BigInt,
    pub word: Vec<i64>,
    pub element: ZVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Representation {
    pub terms: Vec<RepTerm>,
}

impl Representation {
    /// Evaluates the sum of all terms exactly.
    pub fn evaluate(
        &self,
        ctx: &Arc<FieldContext>,
        dim: usize,
        gens: &[Matrix],
    ) -> Result<Vec<Rat>> {
        let mut acc = vec![Rat::zero(); dim];
        for term in &self.terms {
            let w = matrix_word(ctx, dim, gens, &term.word)?;
            let img = w.mul_vec(&int_to_alg(ctx, &term.element))?;
            let m = Rat::from_integer(term.multiplicity.clone());
            for (a, x) in acc.iter_mut().zip(&img) {
                if !x.is_rational() {
                    return Err(Error::Unsupported("non-rational term image".into()));
                }
                *a += &m * &x.coeffs()[0];
            }
        }
        Ok(acc)
    }
}

/// Outcome of an exhaustive box verification.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub bound: u64,
    pub points_in_cone: usize,
    pub decomposed: usize,
    pub failures: Vec<(ZVec, String)>,
    pub extensions_used: usize,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

fn int_to_alg(ctx: &Arc<FieldContext>, v: &[BigInt]) -> Vec<AlgebraicNumber> {
    v.iter()
        .map(|x| AlgebraicNumber::from_rat(ctx, Rat::from_integer(x.clone())))
        .collect()
}

fn int_to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Integer entries of a matrix, if it has them.
fn int_rows(m: &Matrix) -> Option<Vec<Vec<BigInt>>> {
    let rows = m.to_rat_matrix()?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            if !e.is_integer() {
                return None;
            }
            r.push(e.to_integer());
        }
        out.push(r);
    }
    Some(out)
}

fn apply_int(m: &[Vec<BigInt>], x: &[BigInt]) -> ZVec {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Product of signed generator powers, in generator order.
pub fn matrix_word(
    ctx: &Arc<FieldContext>,
    dim: usize,
    gens: &[Matrix],
    word: &[i64],
) -> Result<Matrix> {
    if word.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), got: word.len() });
    }
    let mut acc = Matrix::identity(ctx, dim);
    for (g, &e) in gens.iter().zip(word) {
        if e == 0 {
            continue;
        }
        let base = if e > 0 { g.clone() } else { g.inverse()? };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
    }
    Ok(acc)
}

/// Checks that `a` maps the ray set of `c` onto itself with positive scales.
fn is_cone_automorphism(c: &Cone, a: &Matrix) -> Result<bool> {
    if !is_unimodular(a) {
        return Ok(false);
    }
    for ray in c.rays() {
        let img = a.mul_vec(ray.dir())?;
        if !c.contains_alg(&img)? {
            return Ok(false);
        }
        let lead = match img.iter().find(|x| !x.is_zero()) {
            Some(x) => x.clone(),
            None => return Ok(false),
        };
        let norm: Vec<AlgebraicNumber> =
            img.iter().map(|x| x.div(&lead)).collect::<Result<_>>()?;
        if !c.rays().iter().any(|r| r.normalized() == norm.as_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rejects generator lists whose eigenvalue vectors satisfy a small
/// multiplicative relation (a dependence among their logarithms).
fn check_log_independence(c: &Cone, gens: &[Matrix]) -> Result<()> {
    let mut eigs: Vec<Vec<AlgebraicNumber>> = Vec::new();
    for g in gens {
        let mut per_ray = Vec::new();
        for ray in c.rays() {
            match crate::symmetry::eigenvalue_on(g, ray.dir()) {
                Some(l) => per_ray.push(l),
                None => return Ok(()), // non-diagonal generator: no test applies
            }
        }
        eigs.push(per_ray);
    }
    let k = gens.len();
    let bound = if k <= 2 { LOG_RELATION_BOUND } else { 2 };
    let one = AlgebraicNumber::one(c.context());
    let mut m = vec![-bound; k];
    loop {
        if m.iter().any(|&e| e != 0) {
            let trivial_for_all = (0..c.rays().len()).all(|i| {
                let mut prod = one.clone();
                for (j, &e) in m.iter().enumerate() {
                    let p = if e >= 0 {
                        eigs[j][i].pow(e as u64)
                    } else {
                        match eigs[j][i].inv() {
                            Ok(v) => v.pow((-e) as u64),
                            Err(_) => return false,
                        }
                    };
                    prod = prod.mul(&p);
                }
                prod == one
            });
            if trivial_for_all {
                return Err(Error::LogDependence);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(());
            }
            m[pos] += 1;
            if m[pos] <= bound {
                break;
            }
            m[pos] = -bound;
            pos += 1;
        }
    }
}

/// First nonzero integer combination of the basis vectors that lies in the
/// cone, scanning coefficient rings outward and lexicographically within a
/// ring, reduced to a primitive vector.
fn find_seed(c: &Cone, basis: &[ZVec]) -> Result<ZVec> {
    let dim = c.dim();
    for r in 1..=SEED_RADIUS_CAP {
        let mut coeffs = vec![-r; basis.len()];
        loop {
            if coeffs.iter().any(|&x| x.abs() == r) {
                let mut pt = vec![BigInt::zero(); dim];
                for (b, &cf) in basis.iter().zip(&coeffs) {
                    for (p, e) in pt.iter_mut().zip(b) {
                        *p += e * cf;
                    }
                }
                if !pt.iter().all(|x| x.is_zero()) && c.contains(&int_to_rat(&pt))? {
                    return Ok(primitive_integer_vector(&int_to_rat(&pt)));
                }
            }
            let mut pos = coeffs.len();
            loop {
                if pos == 0 {
                    // ring exhausted
                    break;
                }
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] <= r {
                    pos = usize::MAX;
                    break;
                }
                coeffs[pos] = -r;
            }
            if pos != usize::MAX {
                break;
            }
        }
    }
    Err(Error::CapExceeded { what: "rational seed search radius", cap: SEED_RADIUS_CAP as u64 })
}

fn standard_basis(dim: usize) -> Vec<ZVec> {
    (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn require_integer_image(v: &[AlgebraicNumber]) -> Result<ZVec> {
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        if !x.is_rational() || !x.coeffs()[0].is_integer() {
            return Err(Error::Unsupported("generator image is not integral".into()));
        }
        out.push(x.coeffs()[0].to_integer());
    }
    Ok(out)
}

/// Fundamental sector of a 2D cone with irrational rays under the fixing
/// matrix `a`: `P = cone(t, a·t)` for the smallest rational point `t` of the
/// cone. The powers of `a` sweep `P` across all of the cone.
pub fn build_p_2d(c: &Cone, a: &Matrix) -> Result<RationalCone> {
    if c.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: c.dim() });
    }
    let t = find_seed(c, &standard_basis(2))?;
    let at = require_integer_image(&a.mul_vec(&int_to_alg(c.context(), &t))?)?;
    let p = RationalCone::new(vec![t, at])?;
    for g in p.generators() {
        if !c.contains(&int_to_rat(g))? {
            return Err(Error::InvalidCone("sub-cone generator escapes the cone".into()));
        }
    }
    Ok(p)
}

/// Rational sub-cone for a simple cone fixed ray-wise by the generators:
/// each rational ray contributes itself, and each conjugate pair contributes
/// a fundamental sector of its rational plane under the first generator.
pub fn build_p_simple(c: &Cone, gens: &[Matrix]) -> Result<RationalCone> {
    if gens.is_empty() {
        return Err(Error::InvalidCone("no symmetry generators supplied".into()));
    }
    if c.dim() == 2 {
        return build_p_2d(c, &gens[0]);
    }
    if c.dim() != 3 || !c.is_simple() {
        return Err(Error::Unsupported(
            "sub-cone construction is implemented for dimensions 2 and 3 (simple)".into(),
        ));
    }
    let ctx = c.context();
    let mut pgens: Vec<ZVec> = Vec::new();
    let mut paired = vec![false; c.rays().len()];
    for (i, ray) in c.rays().iter().enumerate() {
        if paired[i] {
            continue;
        }
        if ray.is_rational() {
            let g = ray
                .primitive_integer()
                .ok_or_else(|| Error::InvalidCone("rational ray without integer form".into()))?;
            pgens.push(g);
            paired[i] = true;
            continue;
        }
        // Find the Galois-conjugate partner of this ray.
        let conj: Vec<AlgebraicNumber> = ray
            .normalized()
            .iter()
            .map(|x| x.galois_conjugate())
            .collect::<Result<_>>()?;
        let j = c
            .rays()
            .iter()
            .enumerate()
            .position(|(k, r)| k != i && !paired[k] && r.normalized() == conj.as_slice())
            .ok_or_else(|| Error::Unsupported("irrational ray without conjugate partner".into()))?;
        paired[i] = true;
        paired[j] = true;
        // Rational plane of the pair, spanned by the rational and irrational
        // parts of the ray direction.
        let rat_part: Vec<Rat> = ray.normalized().iter().map(|x| x.rat_part()).collect();
        let irr_part: Vec<Rat> = ray.normalized().iter().map(|x| x.irr_part()).collect();
        let plane = vec![
            primitive_integer_vector(&rat_part),
            primitive_integer_vector(&irr_part),
        ];
        if plane.iter().any(|v| v.iter().all(|x| x.is_zero())) {
            return Err(Error::InvalidCone("degenerate conjugate-pair plane".into()));
        }
        let t = find_seed(c, &plane)?;
        let at = require_integer_image(&gens[0].mul_vec(&int_to_alg(ctx, &t))?)?;
        if primitive_integer_vector(&int_to_rat(&at)) == t {
            return Err(Error::Unsupported("generator acts trivially on a pair plane".into()));
        }
        pgens.push(t);
        pgens.push(at);
    }
    let p = RationalCone::new(pgens)?;
    for g in p.generators() {
        if !c.contains(&int_to_rat(g))? {
            return Err(Error::InvalidCone("sub-cone generator escapes the cone".into()));
        }
    }
    Ok(p)
}

/// Builds the full generating set. With no generators the cone must be
/// rational and serves as its own sub-cone.
pub fn build_generating_set(c: &Cone, gens: Vec<Matrix>) -> Result<GeneratingSet> {
    for g in &gens {
        if !is_cone_automorphism(c, g)? {
            return Err(Error::InvalidCone("generator does not preserve the cone".into()));
        }
    }
    let p = if gens.is_empty() {
        let rays: Vec<ZVec> = c
            .rays()
            .iter()
            .map(|r| {
                r.primitive_integer()
                    .ok_or_else(|| Error::Unsupported("irrational cone needs generators".into()))
            })
            .collect::<Result<_>>()?;
        RationalCone::new(rays)?
    } else {
        check_log_independence(c, &gens)?;
        build_p_simple(c, &gens)?
    };
    let basis = hilbert_basis(&p)?;
    for b in &basis.elements {
        if !c.contains(&int_to_rat(b))? {
            return Err(Error::InvalidCone("basis element escapes the cone".into()));
        }
    }
    Ok(GeneratingSet { p, basis, generators: gens, extensions: Vec::new() })
}

/// Finds a word `e` over the generators with `W(e)·x ∈ P`, returning the
/// word and the balanced image. Searches words outward from the identity.
pub fn balance(gs: &GeneratingSet, x: &[BigInt]) -> Result<(Vec<i64>, ZVec)> {
    let k = gs.generators.len();
    if gs.p.contains(x) {
        return Ok((vec![0; k], x.to_vec()));
    }
    if k == 0 {
        return Err(Error::NotInCone);
    }
    if k == 1 {
        let a = int_rows(&gs.generators[0])
            .ok_or_else(|| Error::Unsupported("non-integer generator".into()))?;
        let a_inv = int_rows(&gs.generators[0].inverse()?)
            .ok_or_else(|| Error::Unsupported("non-unimodular generator".into()))?;
        let mut fwd = x.to_vec();
        let mut bwd = x.to_vec();
        for step in 1..=BALANCE_CAP as i64 {
            fwd = apply_int(&a, &fwd);
            if gs.p.contains(&fwd) {
                return Ok((vec![step], fwd));
            }
            bwd = apply_int(&a_inv, &bwd);
            if gs.p.contains(&bwd) {
                return Ok((vec![-step], bwd));
            }
        }
        return Err(Error::BalanceCapExceeded(BALANCE_CAP));
    }
    // Several generators: scan words by increasing sup-norm of the exponents.
    let ctx = gs.generators[0].context().clone();
    let dim = gs.generators[0].nrows();
    let mut tried: u64 = 0;
    for r in 1..=BALANCE_CAP as i64 {
        let mut word = vec![-r; k];
        loop {
            if word.iter().any(|&e| e.abs() == r) {
                tried += 1;
                if tried > BALANCE_CAP {
                    return Err(Error::BalanceCapExceeded(BALANCE_CAP));
                }
                let w = matrix_word(&ctx, dim, &gs.generators, &word)?;
                if let Some(rows) = int_rows(&w) {
                    let y = apply_int(&rows, x);
                    if gs.p.contains(&y) {
                        return Ok((word, y));
                    }
                }
            }
            let mut pos = word.len();
            let mut rolled = true;
            while pos > 0 {
                pos -= 1;
                word[pos] += 1;
                if word[pos] <= r {
                    rolled = false;
                    break;
                }
                word[pos] = -r;
            }
            if rolled {
                break;
            }
        }
    }
    Err(Error::BalanceCapExceeded(BALANCE_CAP))
}

/// Image of `x` with the smallest coordinate size over a short window of
/// generator powers; used when saturation must pick a representative.
fn most_balanced_image(gs: &GeneratingSet, x: &[BigInt]) -> ZVec {
    if gs.generators.len() != 1 {
        return x.to_vec();
    }
    let (a, a_inv) = match (int_rows(&gs.generators[0]), gs.generators[0].inverse()) {
        (Some(a), Ok(inv)) => match int_rows(&inv) {
            Some(ai) => (a, ai),
            None => return x.to_vec(),
        },
        _ => return x.to_vec(),
    };
    let size = |v: &ZVec| -> BigInt { v.iter().map(|e| e.abs()).sum() };
    let mut best = x.to_vec();
    let mut best_size = size(&best);
    let mut fwd = x.to_vec();
    let mut bwd = x.to_vec();
    for _ in 0..LOG_RELATION_BOUND {
        fwd = apply_int(&a, &fwd);
        bwd = apply_int(&a_inv, &bwd);
        for cand in [&fwd, &bwd] {
            let s = size(cand);
            if s < best_size {
                best = cand.clone();
                best_size = s;
            }
        }
    }
    best
}

fn saturate(gs: &mut GeneratingSet, v: ZVec) -> Result<()> {
    if gs.extensions.len() as u64 >= SATURATION_CAP {
        return Err(Error::SaturationCapExceeded(SATURATION_CAP));
    }
    if !gs.basis.elements.contains(&v) {
        gs.basis.elements.push(v.clone());
        gs.basis.elements.sort();
    }
    gs.extensions.push(v);
    Ok(())
}

/// Exact representation of an integer cone point over the generating set.
/// Balances the point into `P`, decomposes it over the Hilbert basis, and
/// transports the terms back through the inverse word. If either step fails,
/// the most balanced image of the point is recorded as a basis extension and
/// the point is represented through it directly.
pub fn decompose_point(c: &Cone, gs: &mut GeneratingSet, x: &[BigInt]) -> Result<Representation> {
    if x.len() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: x.len() });
    }
    if x.iter().all(|e| e.is_zero()) {
        return Ok(Representation::default());
    }
    if !c.contains(&int_to_rat(x))? {
        return Err(Error::NotInCone);
    }
    let rep = match balance(gs, x) {
        Ok((word, y)) => match decompose_nonneg(&gs.p, &gs.basis, &y) {
            Ok(picks) => {
                let inv: Vec<i64> = word.iter().map(|e| -e).collect();
                Representation {
                    terms: picks
                        .into_iter()
                        .map(|(r, m)| RepTerm {
                            multiplicity: m,
                            word: inv.clone(),
                            element: r,
                        })
                        .collect(),
                }
            }
            Err(Error::NoDecomposition) => {
                saturate(gs, y.clone())?;
                let inv: Vec<i64> = word.iter().map(|e| -e).collect();
                Representation {
                    terms: vec![RepTerm {
                        multiplicity: BigInt::from(1),
                        word: inv,
                        element: y,
                    }],
                }
            }
            Err(e) => return Err(e),
        },
        Err(Error::BalanceCapExceeded(_)) => {
            let y = most_balanced_image(gs, x);
            saturate(gs, y.clone())?;
            // Recover the word carrying x to the recorded image.
            let (word, _) = balance_to_element(gs, x, &y)?;
            let inv: Vec<i64> = word.iter().map(|e| -e).collect();
            Representation {
                terms: vec![RepTerm { multiplicity: BigInt::from(1), word: inv, element: y }],
            }
        }
        Err(e) => return Err(e),
    };
    // Exact reconstruction check.
    let got = rep.evaluate(c.context(), c.dim(), &gs.generators)?;
    let want = int_to_rat(x);
    if got != want {
        return Err(Error::Unsupported("representation failed reconstruction".into()));
    }
    Ok(rep)
}

/// Word carrying `x` exactly onto `target` under the single generator.
fn balance_to_element(gs: &GeneratingSet, x: &[BigInt], target: &ZVec) -> Result<(Vec<i64>, ZVec)> {
    let k = gs.generators.len();
    if x == target.as_slice() {
        return Ok((vec![0; k], target.clone()));
    }
    if k != 1 {
        return Err(Error::NoDecomposition);
    }
    let a = int_rows(&gs.generators[0]).ok_or(Error::NoDecomposition)?;
    let a_inv = int_rows(&gs.generators[0].inverse()?).ok_or(Error::NoDecomposition)?;
    let mut fwd = x.to_vec();
    let mut bwd = x.to_vec();
    for step in 1..=LOG_RELATION_BOUND {
        fwd = apply_int(&a, &fwd);
        if &fwd == target {
            return Ok((vec![step], fwd));
        }
        bwd = apply_int(&a_inv, &bwd);
        if &bwd == target {
            return Ok((vec![-step], bwd));
        }
    }
    Err(Error::NoDecomposition)
}

/// Decomposes every integer point of the cone with coordinates in
/// `[-bound, bound]`, reporting failures and the extensions used.
pub fn verify_generating_set(c: &Cone, gs: &mut GeneratingSet, bound: u64) -> Result<VerifyReport> {
    if bound > VERIFY_BOUND_CAP {
        return Err(Error::BoundTooLarge(bound, VERIFY_BOUND_CAP));
    }
    let dim = c.dim();
    let b = bound as i64;
    let ext_before = gs.extensions.len();
    let mut report = VerifyReport {
        bound,
        points_in_cone: 0,
        decomposed: 0,
        failures: Vec::new(),
        extensions_used: 0,
    };
    let mut coords = vec![-b; dim];
    loop {
        if coords.iter().any(|&x| x != 0) {
            let x: ZVec = coords.iter().map(|&v| BigInt::from(v)).collect();
            if c.contains(&int_to_rat(&x))? {
                report.points_in_cone += 1;
                match decompose_point(c, gs, &x) {
                    Ok(_) => report.decomposed += 1,
                    Err(e) => report.failures.push((x, e.to_string())),
                }
            }
        }
        let mut pos = dim;
        let mut rolled = true;
        while pos > 0 {
            pos -= 1;
            coords[pos] += 1;
            if coords[pos] <= b {
                rolled = false;
                break;
            }
            coords[pos] = -b;
        }
        if rolled {
            break;
        }
    }
    report.extensions_used = gs.extensions.len() - ext_before;
    Ok(report)
}

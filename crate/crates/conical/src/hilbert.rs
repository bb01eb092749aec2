//! Hilbert bases of pointed rational cones in dimension <= 4, computed from
//! fundamental-parallelepiped lattice points of a triangulation, followed by
//! minimalization; plus nonnegative integer decomposition over a basis.

use num::{BigInt, One, Signed, Zero};

use crate::algebraic::Rat;
use crate::cone::primitive_integer_vector;
use crate::error::Error;
use crate::linalg::{rat_det, rat_solve};
use crate::Result;

pub type ZVec = Vec<BigInt>;

fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

fn dot_z(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross_z(a: &[BigInt], b: &[BigInt]) -> ZVec {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// A pointed rational cone given by primitive integer ray generators, with a
/// deterministic triangulation into simple pieces (index lists into the
/// generator list).
#[derive(Debug, Clone)]
pub struct RationalCone {
    dim: usize,
    gens: Vec<ZVec>,
    triangulation: Vec<Vec<usize>>,
    /// Facet normals for dims 2 and 3 (integer, inward).
    normals: Vec<ZVec>,
}

impl RationalCone {
    pub fn new(raw_gens: Vec<Vec<BigInt>>) -> Result<RationalCone> {
        if raw_gens.is_empty() {
            return Err(Error::InvalidCone("no generators".into()));
        }
        let dim = raw_gens[0].len();
        if raw_gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: 0 });
        }
        if dim < 2 || dim > 4 {
            return Err(Error::DimensionTooLarge(dim, 4));
        }
        let mut gens: Vec<ZVec> = Vec::new();
        for g in &raw_gens {
            let p = primitive_integer_vector(&to_rat_vec(g));
            if p.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidCone("zero generator".into()));
            }
            if gens.contains(&p) {
                return Err(Error::InvalidCone("proportional generators".into()));
            }
            gens.push(p);
        }
        let (normals, triangulation) = match dim {
            2 => {
                if gens.len() != 2 {
                    return Err(Error::InvalidCone("2D cone needs exactly two generators".into()));
                }
                let normals = normals_2d(&gens)?;
                (normals, vec![vec![0, 1]])
            }
            3 => {
                if gens.len() < 3 {
                    return Err(Error::InvalidCone("3D cone needs at least three generators".into()));
                }
                let (normals, facets) = facets_3d(&gens)?;
                let tri = fan_triangulation(&gens, &facets)?;
                (normals, tri)
            }
            _ => {
                // dim 4: simple cones only.
                if gens.len() != 4 {
                    return Err(Error::InvalidCone("4D support is limited to simple cones".into()));
                }
                let m: Vec<Vec<Rat>> = (0..4)
                    .map(|i| (0..4).map(|j| Rat::from_integer(gens[j][i].clone())).collect())
                    .collect();
                if rat_det(&m).is_zero() {
                    return Err(Error::DependentGenerators);
                }
                (vec![], vec![vec![0, 1, 2, 3]])
            }
        };
        Ok(RationalCone { dim, gens, triangulation, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ZVec] {
        &self.gens
    }

    pub fn triangulation(&self) -> &[Vec<usize>] {
        &self.triangulation
    }

    /// Exact membership of an integer point.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim);
        if !self.normals.is_empty() {
            // Pure big-integer dot products; avoids rational normalization.
            return self
                .normals
                .iter()
                .all(|n| n.iter().zip(x).map(|(a, b)| a * b).sum::<BigInt>() >= BigInt::zero());
        }
        self.contains_rat(&to_rat_vec(x))
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim);
        if !self.normals.is_empty() {
            return self.normals.iter().all(|n| {
                let v: Rat = n.iter().zip(x).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum();
                !v.is_negative()
            });
        }
        // Simple cone: nonnegative barycentric coordinates.
        let m: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| (0..self.gens.len()).map(|j| Rat::from_integer(self.gens[j][i].clone())).collect())
            .collect();
        match rat_solve(&m, x) {
            Some(lambda) => lambda.iter().all(|l| !l.is_negative()),
            None => false,
        }
    }
}

fn normals_2d(gens: &[ZVec]) -> Result<Vec<ZVec>> {
    let mut out = Vec::with_capacity(2);
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        let r = &gens[i];
        let n = vec![-r[1].clone(), r[0].clone()];
        let s = dot_z(&n, &gens[j]);
        if s.is_zero() {
            return Err(Error::NotPointed);
        }
        out.push(if s.is_negative() {
            n.iter().map(|x| -x).collect()
        } else {
            n
        });
    }
    Ok(out)
}

/// Inward facet normals of a pointed 3D cone plus the generator index pairs
/// spanning each facet.
fn facets_3d(gens: &[ZVec]) -> Result<(Vec<ZVec>, Vec<(usize, usize)>)> {
    let m = gens.len();
    let mut normals: Vec<ZVec> = Vec::new();
    let mut facets: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let n = cross_z(&gens[i], &gens[j]);
            if n.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut pos = false;
            let mut neg = false;
            for (k, g) in gens.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                match dot_z(&n, g).sign() {
                    num::bigint::Sign::Plus => pos = true,
                    num::bigint::Sign::Minus => neg = true,
                    num::bigint::Sign::NoSign => {}
                }
            }
            if pos && neg {
                continue;
            }
            let n = if neg { n.iter().map(|x| -x).collect() } else { n };
            if !normals.contains(&n) {
                normals.push(n);
                facets.push((i, j));
            }
        }
    }
    // Pointedness: no generator's negation may satisfy all inequalities.
    for g in gens {
        let neg: ZVec = g.iter().map(|x| -x).collect();
        if normals.iter().all(|n| !dot_z(n, &neg).is_negative()) {
            return Err(Error::NotPointed);
        }
    }
    Ok((normals, facets))
}

/// Fan triangulation of a 3D cone from generator 0 across its facets.
fn fan_triangulation(gens: &[ZVec], facets: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut tri = Vec::new();
    for &(i, j) in facets {
        if i == 0 || j == 0 {
            continue;
        }
        tri.push(vec![0, i, j]);
    }
    if tri.is_empty() {
        // Simple cone whose every facet touches generator 0.
        if gens.len() == 3 {
            tri.push(vec![0, 1, 2]);
        } else {
            return Err(Error::InvalidCone("triangulation failed".into()));
        }
    }
    Ok(tri)
}

/// All lattice points of the fundamental parallelepiped of n independent
/// integer generators in Z^n.
pub fn parallelepiped_points(gens: &[ZVec]) -> Result<Vec<ZVec>> {
    let n = gens.len();
    if n == 0 || gens.iter().any(|g| g.len() != n) {
        return Err(Error::DependentGenerators);
    }
    if n > 4 {
        return Err(Error::DimensionTooLarge(n, 4));
    }
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer(gens[j][i].clone())).collect())
        .collect();
    let det = rat_det(&m);
    if det.is_zero() {
        return Err(Error::DependentGenerators);
    }
    let expected: BigInt = det.to_integer().abs();
    // Integer bounding box of the half-open parallelepiped.
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for k in 0..n {
        for g in gens {
            if g[k].is_negative() {
                lo[k] += &g[k];
            } else {
                hi[k] += &g[k];
            }
        }
    }
    let mut out: Vec<ZVec> = Vec::new();
    let mut point = lo.clone();
    'scan: loop {
        if let Some(lambda) = rat_solve(&m, &to_rat_vec(&point)) {
            let inside = lambda
                .iter()
                .all(|l| !l.is_negative() && *l < Rat::one());
            if inside {
                out.push(point.clone());
            }
        }
        // Odometer increment over the box.
        for k in 0..n {
            point[k] += 1;
            if point[k] <= hi[k] {
                continue 'scan;
            }
            point[k] = lo[k].clone();
        }
        break;
    }
    out.sort();
    if BigInt::from(out.len()) != expected {
        return Err(Error::InvalidCone(format!(
            "parallelepiped enumeration found {} points, determinant predicts {}",
            out.len(),
            expected
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<ZVec>,
}

/// Hilbert basis of a pointed rational cone: generator + parallelepiped
/// candidates over each simple triangulation piece, minimalized.
pub fn hilbert_basis(cone: &RationalCone) -> Result<HilbertBasis> {
    let mut candidates: Vec<ZVec> = Vec::new();
    let push = |v: ZVec, candidates: &mut Vec<ZVec>| {
        if !v.iter().all(|x| x.is_zero()) && !candidates.contains(&v) {
            candidates.push(v);
        }
    };
    for g in cone.generators() {
        push(g.clone(), &mut candidates);
    }
    for piece in cone.triangulation() {
        let gens: Vec<ZVec> = piece.iter().map(|&i| cone.generators()[i].clone()).collect();
        for p in parallelepiped_points(&gens)? {
            push(p, &mut candidates);
        }
    }
    // Minimalization: drop any candidate that splits as h + c with h another
    // candidate and c a nonzero integer cone point.
    let mut kept: Vec<ZVec> = Vec::new();
    'cand: for b in &candidates {
        for h in &candidates {
            if h == b {
                continue;
            }
            let diff: ZVec = b.iter().zip(h).map(|(x, y)| x - y).collect();
            if diff.iter().all(|x| x.is_zero()) {
                continue;
            }
            if cone.contains(&diff) {
                continue 'cand;
            }
        }
        kept.push(b.clone());
    }
    kept.sort();
    Ok(HilbertBasis { elements: kept })
}

/// Nonnegative integer decomposition of x over the basis, by depth-first
/// search with exact cone-membership pruning. Elements are tried in sorted
/// order, largest multiplicity first.
pub fn decompose_nonneg(
    cone: &RationalCone,
    basis: &HilbertBasis,
    x: &[BigInt],
) -> Result<Vec<(ZVec, BigInt)>> {
    if !cone.contains(x) {
        return Err(Error::NotInCone);
    }
    let mut elements = basis.elements.clone();
    elements.sort();
    let mut picked: Vec<(ZVec, BigInt)> = Vec::new();
    if dfs(cone, &elements, x.to_vec(), 0, &mut picked) {
        Ok(picked)
    } else {
        Err(Error::NoDecomposition)
    }
}

fn dfs(
    cone: &RationalCone,
    elements: &[ZVec],
    rest: ZVec,
    idx: usize,
    picked: &mut Vec<(ZVec, BigInt)>,
) -> bool {
    if rest.iter().all(|x| x.is_zero()) {
        return true;
    }
    if idx >= elements.len() {
        return false;
    }
    let e = &elements[idx];
    // Largest multiplicity keeping the remainder in the cone.
    let mut max_k = BigInt::zero();
    loop {
        let next = &max_k + 1;
        let r: ZVec = rest.iter().zip(e).map(|(x, y)| x - &next * y).collect();
        if cone.contains(&r) {
            max_k = next;
        } else {
            break;
        }
    }
    let mut k = max_k.clone();
    loop {
        let r: ZVec = rest.iter().zip(e).map(|(x, y)| x - &k * y).collect();
        if !k.is_zero() {
            picked.push((e.clone(), k.clone()));
        }
        if dfs(cone, elements, r, idx + 1, picked) {
            return true;
        }
        if !k.is_zero() {
            picked.pop();
        }
        if k.is_zero() {
            return false;
        }
        k -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(vals: &[i64]) -> ZVec {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn cone2(a: &[i64], b: &[i64]) -> RationalCone {
        RationalCone::new(vec![z(a), z(b)]).unwrap()
    }

    #[test]
    fn parallelepiped_examples() {
        let pts = parallelepiped_points(&[z(&[0, 1]), z(&[2, 3])]).unwrap();
        assert_eq!(pts, vec![z(&[0, 0]), z(&[1, 2])]);
        let pts = parallelepiped_points(&[z(&[1, 0]), z(&[0, 1])]).unwrap();
        assert_eq!(pts, vec![z(&[0, 0])]);
        let pts = parallelepiped_points(&[z(&[1, 0]), z(&[1, 4])]).unwrap();
        assert_eq!(
            pts,
            vec![z(&[0, 0]), z(&[1, 1]), z(&[1, 2]), z(&[1, 3])]
        );
    }

    #[test]
    fn hilbert_examples() {
        let hb = hilbert_basis(&cone2(&[0, 1], &[2, 3])).unwrap();
        assert_eq!(hb.elements, vec![z(&[0, 1]), z(&[1, 2]), z(&[2, 3])]);
        let hb = hilbert_basis(&cone2(&[1, 0], &[0, 1])).unwrap();
        assert_eq!(hb.elements, vec![z(&[0, 1]), z(&[1, 0])]);
        let hb = hilbert_basis(&cone2(&[1, 0], &[1, 4])).unwrap();
        assert_eq!(
            hb.elements,
            vec![z(&[1, 0]), z(&[1, 1]), z(&[1, 2]), z(&[1, 3]), z(&[1, 4])]
        );
    }

    #[test]
    fn decompose_examples() {
        let c = cone2(&[0, 1], &[2, 3]);
        let hb = hilbert_basis(&c).unwrap();
        let d = decompose_nonneg(&c, &hb, &z(&[2, 3])).unwrap();
        assert_eq!(reconstruct(&d, 2), z(&[2, 3]));
        let d = decompose_nonneg(&c, &hb, &z(&[2, 4])).unwrap();
        assert_eq!(reconstruct(&d, 2), z(&[2, 4]));
        let d = decompose_nonneg(&c, &hb, &z(&[3, 5])).unwrap();
        assert_eq!(reconstruct(&d, 2), z(&[3, 5]));
        assert!(matches!(
            decompose_nonneg(&c, &hb, &z(&[1, 0])),
            Err(Error::NotInCone)
        ));
    }

    fn reconstruct(terms: &[(ZVec, BigInt)], dim: usize) -> ZVec {
        let mut acc = vec![BigInt::zero(); dim];
        for (e, k) in terms {
            for (a, x) in acc.iter_mut().zip(e) {
                *a += k * x;
            }
        }
        acc
    }

    /// Brute-force Hilbert basis over a coordinate box.
    fn hilbert_oracle(c: &RationalCone, bound: i64) -> Vec<ZVec> {
        let dim = c.dim();
        let mut pts: Vec<ZVec> = Vec::new();
        let mut idx = vec![-bound; dim];
        'scan: loop {
            let p: ZVec = idx.iter().map(|&v| BigInt::from(v)).collect();
            if !p.iter().all(|x| x.is_zero()) && c.contains(&p) {
                pts.push(p);
            }
            for k in 0..dim {
                idx[k] += 1;
                if idx[k] <= bound {
                    continue 'scan;
                }
                idx[k] = -bound;
            }
            break;
        }
        let mut irr: Vec<ZVec> = Vec::new();
        'outer: for p in &pts {
            for q in &pts {
                let diff: ZVec = p.iter().zip(q).map(|(a, b)| a - b).collect();
                if diff.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if pts.contains(&diff) {
                    continue 'outer;
                }
            }
            irr.push(p.clone());
        }
        irr.sort();
        irr
    }

    #[test]
    fn oracle_comparison_small_cones() {
        // Deterministic small sample of 2D and 3D pointed cones. The oracle
        // box bound 12 safely covers all basis elements at these sizes.
        let cones2 = [
            (&[0i64, 1], &[2i64, 3]),
            (&[1, 0], &[1, 4]),
            (&[1, 1], &[3, -2]),
            (&[2, 1], &[1, 3]),
            (&[5, 2], &[1, 1]),
        ];
        for (a, b) in cones2 {
            let c = cone2(a, b);
            let hb = hilbert_basis(&c).unwrap();
            assert_eq!(hb.elements, hilbert_oracle(&c, 12), "cone {a:?},{b:?}");
        }
        let cones3: [&[&[i64]]; 3] = [
            &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]],
            &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]],
            &[&[2, 1, 1], &[0, 1, 0], &[0, 0, 1]],
        ];
        for rays in cones3 {
            let c = RationalCone::new(rays.iter().map(|r| z(r)).collect()).unwrap();
            let hb = hilbert_basis(&c).unwrap();
            assert_eq!(hb.elements, hilbert_oracle(&c, 8), "cone {rays:?}");
        }
    }

    #[test]
    fn basis_elements_irreducible() {
        let c = RationalCone::new(vec![z(&[1, 0, 1]), z(&[0, 1, 1]), z(&[-1, -1, 3])]).unwrap();
        let hb = hilbert_basis(&c).unwrap();
        for (i, b) in hb.elements.iter().enumerate() {
            assert!(c.contains(b));
            for (j, h) in hb.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                let diff: ZVec = b.iter().zip(h).map(|(x, y)| x - y).collect();
                if diff.iter().all(|x| x.is_zero()) {
                    continue;
                }
                assert!(!c.contains(&diff), "{b:?} reducible via {h:?}");
            }
        }
    }

    #[test]
    fn decompose_roundtrip_many() {
        let c = cone2(&[0, 1], &[2, 3]);
        let hb = hilbert_basis(&c).unwrap();
        for x in -20i64..=20 {
            for y in -20i64..=20 {
                let p = z(&[x, y]);
                if !c.contains(&p) {
                    continue;
                }
                let d = decompose_nonneg(&c, &hb, &p).unwrap();
                assert_eq!(reconstruct(&d, 2), p);
            }
        }
    }

    #[test]
    fn non_pointed_rejected() {
        assert!(RationalCone::new(vec![z(&[1, 0]), z(&[-1, 0])]).is_err());
        assert!(RationalCone::new(vec![
            z(&[1, 0, 0]),
            z(&[-1, 0, 0]),
            z(&[0, 1, 0]),
        ])
        .is_err());
    }
}

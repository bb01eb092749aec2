//! Acceptance gate: one test (and one pass/fail line) per release criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conical::algebraic::{rat, AlgebraicNumber, FieldContext, Rat};
use conical::cone::{Cone, ConeKind};
use conical::generation::{build_generating_set, decompose_point, verify_generating_set};
use conical::hilbert::{hilbert_basis, RationalCone, ZVec};
use conical::lab;
use conical::linalg::Matrix;
use conical::pell;
use conical::symmetry::{self, GroupClass, Status};

fn z(vals: &[i64]) -> ZVec {
    vals.iter().map(|&v| BigInt::from(v)).collect()
}

fn sqrt_cone_2d(d: u64) -> Cone {
    let ctx = FieldContext::sqrt(d).unwrap();
    let s = AlgebraicNumber::generator(&ctx);
    let one = AlgebraicNumber::one(&ctx);
    Cone::new(
        &ctx,
        2,
        ConeKind::Pointed,
        vec![vec![one.clone(), s.clone()], vec![one.neg(), s]],
    )
    .unwrap()
}

fn int_cone(ctx: &Arc<FieldContext>, rays: &[&[i64]]) -> Cone {
    let vecs: Vec<Vec<AlgebraicNumber>> = rays
        .iter()
        .map(|r| r.iter().map(|&v| AlgebraicNumber::from_int(ctx, v)).collect())
        .collect();
    Cone::new(ctx, rays[0].len(), ConeKind::Pointed, vecs).unwrap()
}

fn report(criterion: &str, elapsed: Duration, limit: Duration) {
    println!(
        "PASS {criterion} ({:.2}s, limit {:.0}s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(
        elapsed <= limit,
        "{criterion}: took {:.2}s, limit {:.0}s",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
}

#[test]
fn criterion_1_example_end_to_end() {
    let start = Instant::now();
    let c = sqrt_cone_2d(2);
    let verdict = symmetry::decide(&c).unwrap();
    assert_eq!(verdict.status, Status::FgCertified);
    let cert = verdict.certificate.as_ref().unwrap();
    let a = cert.fixing_generator.clone().unwrap();
    let expect = Matrix::from_int_rows(c.context(), &[vec![3, 2], vec![4, 3]]);
    assert!(a == expect || a == expect.inverse().unwrap(), "unexpected generator");
    let p = pell::fundamental_solution(2).unwrap();
    assert_eq!((p.x, p.y), (BigInt::from(3), BigInt::from(2)));

    let mut gs = build_generating_set(&c, vec![a]).unwrap();
    assert_eq!(gs.p.generators(), &[z(&[0, 1]), z(&[2, 3])]);
    assert_eq!(gs.basis.elements, vec![z(&[0, 1]), z(&[1, 2]), z(&[2, 3])]);

    // Exhaustive decomposition of every integer cone point with |coords| <= 200,
    // with exact reconstruction (checked inside decompose) and no saturation.
    let rep = verify_generating_set(&c, &mut gs, 200).unwrap();
    assert!(rep.passes(), "failures: {:?}", rep.failures);
    assert_eq!(rep.decomposed, rep.points_in_cone);
    assert_eq!(rep.extensions_used, 0);
    assert!(rep.points_in_cone > 20_000);
    report("[1] worked example end-to-end", start.elapsed(), Duration::from_secs(10));
}

#[test]
fn criterion_2_group_classification() {
    let start = Instant::now();
    let ctx = FieldContext::rational();

    let c = int_cone(&ctx, &[&[2, 1], &[3, 5]]);
    let cert = symmetry::classify_group_2d(&c).unwrap();
    assert_eq!(cert.group_class, GroupClass::Trivial);

    let c = int_cone(&ctx, &[&[1, 1], &[-1, 1]]);
    let cert = symmetry::classify_group_2d(&c).unwrap();
    assert_eq!(cert.group_class, GroupClass::Z2);
    let q = Matrix::from_int_rows(&ctx, &[vec![-1, 0], vec![0, 1]]);
    assert_eq!(cert.switchers, vec![q]);

    // rays (1, (8 -+ 3 sqrt11)/5)
    let ctx11 = FieldContext::sqrt(11).unwrap();
    let one = AlgebraicNumber::one(&ctx11);
    let s1 = AlgebraicNumber::new(&ctx11, vec![rat(8, 5), rat(-3, 5)]).unwrap();
    let s2 = s1.galois_conjugate().unwrap();
    let c = Cone::new(
        &ctx11,
        2,
        ConeKind::Pointed,
        vec![vec![one.clone(), s1], vec![one, s2]],
    )
    .unwrap();
    let cert = symmetry::classify_group_2d(&c).unwrap();
    assert_eq!(cert.group_class, GroupClass::Z);
    let a = cert.fixing_generator.unwrap();
    let expect = Matrix::from_int_rows(&ctx11, &[vec![2, 5], vec![7, 18]]);
    assert!(a == expect || a == expect.inverse().unwrap());

    let c = sqrt_cone_2d(2);
    let cert = symmetry::classify_group_2d(&c).unwrap();
    assert_eq!(cert.group_class, GroupClass::InfiniteDihedral);
    report("[2] group classification on the four examples", start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_3_pell_oracle() {
    let start = Instant::now();
    for d in 2u64..=60 {
        if !conical::algebraic::is_squarefree(d) || conical::algebraic::is_perfect_square(d) {
            continue;
        }
        // Brute-force oracle: minimal y <= 5000 with x^2 - d y^2 = 1.
        let mut oracle: Option<(u128, u128)> = None;
        for y in 1u128..=5000 {
            let t = d as u128 * y * y + 1;
            let x = (t as f64).sqrt() as u128;
            for xx in x.saturating_sub(1)..=x + 1 {
                if xx * xx == t {
                    oracle = Some((xx, y));
                    break;
                }
            }
            if oracle.is_some() {
                break;
            }
        }
        let sol = pell::fundamental_solution(d).unwrap();
        match oracle {
            Some((x, y)) => {
                assert_eq!(sol.x, BigInt::from(x), "d={d}");
                assert_eq!(sol.y, BigInt::from(y), "d={d}");
            }
            None => assert!(sol.y > BigInt::from(5000), "d={d}"),
        }
    }
    let spot = |d: u64, x: i64, y: i64| {
        let s = pell::fundamental_solution(d).unwrap();
        assert_eq!((s.x, s.y), (BigInt::from(x), BigInt::from(y)), "d={d}");
    };
    spot(2, 3, 2);
    spot(11, 10, 3);
    spot(13, 649, 180);
    report("[3] Pell solver vs brute-force oracle", start.elapsed(), Duration::from_secs(1));
}

/// Box-scan oracle: irreducible cone points found by processing points in
/// increasing order of the sum functional and testing reducibility against
/// the irreducibles found so far.
fn oracle_irreducibles(cone: &RationalCone, bound: i64) -> Vec<ZVec> {
    let dim = cone.dim();
    let mut points: Vec<ZVec> = Vec::new();
    let mut coords = vec![0i64; dim];
    loop {
        if coords.iter().any(|&x| x != 0) {
            let v = coords.iter().map(|&x| BigInt::from(x)).collect::<ZVec>();
            if cone.contains(&v) {
                points.push(v);
            }
        }
        let mut pos = dim;
        let mut rolled = true;
        while pos > 0 {
            pos -= 1;
            coords[pos] += 1;
            if coords[pos] <= bound {
                rolled = false;
                break;
            }
            coords[pos] = 0;
        }
        if rolled {
            break;
        }
    }
    points.sort_by_key(|v| v.iter().map(|x| x.clone()).sum::<BigInt>());
    let mut irreducible: Vec<ZVec> = Vec::new();
    'outer: for v in points {
        for s in &irreducible {
            let diff: ZVec = v.iter().zip(s).map(|(a, b)| a - b).collect();
            if diff.iter().all(|x| x.is_zero()) || cone.contains(&diff) {
                continue 'outer;
            }
        }
        irreducible.push(v);
    }
    irreducible.sort();
    irreducible
}

#[test]
fn criterion_4_hilbert_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut done = 0;
    while done < 50 {
        let dim = if done % 2 == 0 { 2 } else { 3 };
        let gens: Vec<ZVec> = (0..dim)
            .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(0..=9i64))).collect())
            .collect();
        // Nonnegative generators give pointed cones; require independence.
        let Ok(cone) = RationalCone::new(gens) else { continue };
        let Ok(basis) = hilbert_basis(&cone) else { continue };
        let oracle = oracle_irreducibles(&cone, 30);
        assert_eq!(basis.elements, oracle, "cone {:?}", cone.generators());
        done += 1;
    }
    report("[4] Hilbert basis oracle equivalence (50 cones)", start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_5_halfspace_decisions() {
    let start = Instant::now();
    for d in [2u64, 3] {
        let ctx = FieldContext::sqrt(d).unwrap();
        let one = AlgebraicNumber::one(&ctx);
        let s = AlgebraicNumber::generator(&ctx);
        let h = Cone::new(&ctx, 2, ConeKind::Halfspace, vec![vec![one, s]]).unwrap();
        let v = symmetry::decide(&h).unwrap();
        assert_eq!(v.status, Status::FgCertified, "d={d}");
        let a = v.certificate.unwrap().fixing_generator.unwrap();
        assert!(a.det().unwrap().is_one(), "d={d}: boundary generator must have det +1");
    }
    let ctx = FieldContext::rational();
    let h = Cone::new(
        &ctx,
        2,
        ConeKind::Halfspace,
        vec![vec![AlgebraicNumber::from_int(&ctx, 1), AlgebraicNumber::from_int(&ctx, 2)]],
    )
    .unwrap();
    let v = symmetry::decide(&h).unwrap();
    assert_eq!(v.status, Status::FgCertified);
    report("[5] half-space decisions", start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_6_three_dimensional() {
    let start = Instant::now();
    let ctx = FieldContext::sqrt(2).unwrap();
    let s = AlgebraicNumber::generator(&ctx);
    let one = AlgebraicNumber::one(&ctx);
    let zero = AlgebraicNumber::zero(&ctx);
    let c = Cone::new(
        &ctx,
        3,
        ConeKind::Pointed,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), s.clone()],
            vec![zero.clone(), one.neg(), s.clone()],
        ],
    )
    .unwrap();
    let v = symmetry::decide(&c).unwrap();
    assert_eq!(v.status, Status::FgCertified);
    let cert = v.certificate.unwrap();
    // Distinct eigenvalues 1, 3 +- 2 sqrt2 in ray order.
    assert!(cert.eigenvalues[0].is_one());
    let lp = AlgebraicNumber::new(&ctx, vec![rat(3, 1), rat(2, 1)]).unwrap();
    assert_eq!(cert.eigenvalues[1], lp);
    assert_eq!(cert.eigenvalues[2], lp.galois_conjugate().unwrap());
    let mut gs = build_generating_set(&c, vec![cert.fixing_generator.unwrap()]).unwrap();
    let rep = verify_generating_set(&c, &mut gs, 10).unwrap();
    assert!(rep.passes());
    assert_eq!(rep.extensions_used, 0);

    // Four irrational extreme rays in 3D: certified not finitely generated.
    let c = Cone::new(
        &ctx,
        3,
        ConeKind::Pointed,
        vec![
            vec![one.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), one.clone(), one.clone()],
            vec![one.neg(), zero.clone(), one.clone()],
            vec![zero, s.neg(), one],
        ],
    )
    .unwrap();
    let v = symmetry::decide(&c).unwrap();
    assert_eq!(v.status, Status::NotFgCertified);
    report("[6] three-dimensional decisions", start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_7_family_lab() {
    let start = Instant::now();
    for n1 in 0..=10 {
        let fc = lab::family_point(n1).unwrap();
        assert!(fc.passes(), "n1={n1}: {:?}", fc.checks);
        assert!(lab::check_non_subtractable(&fc.alpha).unwrap(), "n1={n1}");
        if n1 == 0 {
            assert_eq!(fc.v, z(&[0, 4, -2, 8]));
        }
    }
    // The sub-cone admits exactly the block-Pell symmetries at entry bound 4:
    // identity and the two Pell blocks with (x, y) = (3, +-2).
    let sub = lab::build_4d_subcone().unwrap();
    let found = symmetry::search_eigen_symmetry(&sub, 4).unwrap();
    assert_eq!(found.len(), 3);
    for m in &found {
        let rows = m.to_rat_matrix().unwrap();
        let x = rows[0][0].to_integer();
        let y = rows[0][1].clone();
        assert_eq!(rows[1][0], y.clone() * Rat::from_integer(BigInt::from(2)));
        assert!(
            (&x * &x - BigInt::from(2) * y.to_integer().pow(2)).is_one(),
            "not a Pell block"
        );
    }
    report("[7] 4D family lab", start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_8_fermat_scan() {
    let start = Instant::now();
    for k in [2u32, 3] {
        let res = lab::fermat_scan(k, 100).unwrap();
        assert!(res.all_trivial(), "k={k}");
        // Hits are exactly the axis multiples (t,0,t) and (0,t,t).
        assert_eq!(res.hits.len(), 200, "k={k}");
    }
    report("[8] Fermat boundary scan", start.elapsed(), Duration::from_secs(30));
}

fn random_alg(rng: &mut ChaCha8Rng, ctx: &Arc<FieldContext>) -> AlgebraicNumber {
    let coeffs: Vec<Rat> = (0..ctx.degree())
        .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
        .collect();
    AlgebraicNumber::new(ctx, coeffs).unwrap()
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let cubic = FieldContext::new(
        vec![BigInt::from(-2), BigInt::zero(), BigInt::zero(), BigInt::one()],
        rat(1, 1),
        rat(2, 1),
    )
    .unwrap();
    let contexts = [FieldContext::rational(), FieldContext::sqrt(2).unwrap(), cubic];

    // Field axioms and sign multiplicativity on random samples.
    for ctx in &contexts {
        for _ in 0..100 {
            let x = random_alg(&mut rng, ctx);
            let y = random_alg(&mut rng, ctx);
            let w = random_alg(&mut rng, ctx);
            let lhs = x.add(&y).mul(&w);
            let rhs = x.mul(&w).add(&y.mul(&w));
            assert_eq!(lhs, rhs, "distributivity");
            if !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).is_one(), "inverse");
            }
            assert_eq!(
                x.mul(&y).sign(),
                x.sign() * y.sign(),
                "sign multiplicativity"
            );
        }
    }

    // Cayley-Hamilton for rational matrices up to 4x4.
    let ctx = FieldContext::rational();
    for n in 2usize..=4 {
        for _ in 0..10 {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-5i64..=5)).collect())
                .collect();
            let m = Matrix::from_int_rows(&ctx, &rows);
            let p = m.charpoly().unwrap();
            let mut acc = Matrix::identity(&ctx, n).scale(&p[0]);
            let mut power = Matrix::identity(&ctx, n);
            for c in &p[1..] {
                power = power.mul(&m).unwrap();
                acc = acc.add(&power.scale(c)).unwrap();
            }
            let zero = Matrix::identity(&ctx, n).scale(&AlgebraicNumber::zero(&ctx));
            assert_eq!(acc, zero, "Cayley-Hamilton n={n}");
        }
    }

    // Produced symmetries: rational eigenrays carry eigenvalue 1; dihedral
    // certificates satisfy Q^2 = I and Q A Q = A^{-1}.
    let c = sqrt_cone_2d(2);
    let cert = symmetry::classify_group_2d(&c).unwrap();
    let a = cert.fixing_generator.clone().unwrap();
    for q in &cert.switchers {
        assert!(q.mul(q).unwrap().is_identity());
        assert_eq!(q.mul(&a).unwrap().mul(q).unwrap(), a.inverse().unwrap());
    }

    // Decompose round-trip on 500 random points per certified cone.
    for (cone, seed) in [(sqrt_cone_2d(2), 3u64), (sqrt_cone_2d(3), 4u64)] {
        let verdict = symmetry::decide(&cone).unwrap();
        assert_eq!(verdict.status, Status::FgCertified);
        let a = verdict.certificate.unwrap().fixing_generator.unwrap();
        let mut gs = build_generating_set(&cone, vec![a.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = cone.context().clone();
        for _ in 0..500 {
            // Random cone point: nonnegative combination of basis elements,
            // pushed through a random group power.
            let mut x: Vec<AlgebraicNumber> = (0..2)
                .map(|_| AlgebraicNumber::zero(&ctx))
                .collect();
            for b in &gs.basis.elements {
                let m = rng.gen_range(0i64..=6);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi = xi.add(
                        &AlgebraicNumber::from_rat(&ctx, Rat::from_integer(bi * m)),
                    );
                }
            }
            let k = rng.gen_range(-4i64..=4);
            let power = if k >= 0 { a.clone() } else { a.inverse().unwrap() };
            for _ in 0..k.unsigned_abs() {
                x = power.mul_vec(&x).unwrap();
            }
            let xi: ZVec = x
                .iter()
                .map(|v| {
                    assert!(v.is_rational());
                    v.coeffs()[0].to_integer()
                })
                .collect();
            if xi.iter().all(|v| v.is_zero()) {
                continue;
            }
            // decompose_point verifies exact reconstruction internally.
            let rep = decompose_point(&cone, &mut gs, &xi).unwrap();
            assert!(!rep.terms.is_empty());
            assert!(rep
                .terms
                .iter()
                .all(|t| t.multiplicity.is_positive() && gs.basis.elements.contains(&t.element)));
        }
        assert!(gs.extensions.is_empty());
    }
    report("[9] property suites", start.elapsed(), Duration::from_secs(60));
}

//! Pell equations x^2 - D y^2 = ±1 via the periodic continued fraction of
//! sqrt(D), unit powering, and the smallest integral power of a matrix.

use num::{BigInt, One, Signed, Zero};

use crate::algebraic::{is_perfect_square, is_squarefree, AlgebraicNumber, FieldContext, Rat};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::Result;

pub const INTEGRAL_POWER_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: u64,
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
}

impl PellSolution {
    fn check(&self) -> bool {
        &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y == BigInt::from(self.norm)
    }
}

fn validate_d(d: u64) -> Result<()> {
    if d < 2 || is_perfect_square(d) {
        return Err(Error::PerfectSquare(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    Ok(())
}

/// Fundamental solution of x^2 - D y^2 = ±1 from the continued fraction of
/// sqrt(D). The norm is -1 exactly when the period is odd.
pub fn fundamental_solution_pm(d: u64) -> Result<PellSolution> {
    validate_d(d)?;
    let a0 = (d as f64).sqrt() as u64;
    let a0 = if (a0 + 1) * (a0 + 1) <= d { a0 + 1 } else { a0 };
    // Convergent recurrence alongside the (m, den, a) state of sqrt(D).
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        let lhs = &p * &p - BigInt::from(d) * &q * &q;
        if lhs == BigInt::one() {
            return Ok(PellSolution { d, x: p, y: q, norm: 1 });
        }
        if lhs == BigInt::from(-1) {
            return Ok(PellSolution { d, x: p, y: q, norm: -1 });
        }
        m = a * den - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        let p_next = BigInt::from(a) * &p + &p_prev;
        let q_next = BigInt::from(a) * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Fundamental solution of x^2 - D y^2 = 1 (squaring the norm -1 solution
/// when the continued-fraction period is odd).
pub fn fundamental_solution(d: u64) -> Result<PellSolution> {
    let s = fundamental_solution_pm(d)?;
    if s.norm == 1 {
        return Ok(s);
    }
    // (x + y sqrt(D))^2 = (x^2 + D y^2) + 2xy sqrt(D)
    let x = &s.x * &s.x + BigInt::from(d) * &s.y * &s.y;
    let y = BigInt::from(2) * &s.x * &s.y;
    let out = PellSolution { d, x, y, norm: 1 };
    debug_assert!(out.check());
    Ok(out)
}

/// Coefficients of (x + y sqrt(D))^k; negative k uses the norm-dependent
/// inverse (x - y sqrt(D)) or -(x - y sqrt(D)) pattern via exact division.
pub fn unit_power(sol: &PellSolution, k: i64) -> (BigInt, BigInt) {
    let (bx, by) = if k >= 0 {
        (sol.x.clone(), sol.y.clone())
    } else if sol.norm == 1 {
        (sol.x.clone(), -sol.y.clone())
    } else {
        // norm -1: inverse of (x + y sqrt D) is -(x - y sqrt D) = -x + y sqrt D
        (-sol.x.clone(), sol.y.clone())
    };
    let mut n = k.unsigned_abs();
    let (mut rx, mut ry) = (BigInt::one(), BigInt::zero());
    let (mut px, mut py) = (bx, by);
    let d = BigInt::from(sol.d);
    while n > 0 {
        if n & 1 == 1 {
            let nx = &rx * &px + &d * &ry * &py;
            let ny = &rx * &py + &ry * &px;
            rx = nx;
            ry = ny;
        }
        let nx = &px * &px + &d * &py * &py;
        let ny = BigInt::from(2) * &px * &py;
        px = nx;
        py = ny;
        n >>= 1;
    }
    (rx, ry)
}

/// Squarefree decomposition n = f^2 d with d squarefree.
fn squarefree_part(n: u64) -> (u64, u64) {
    let mut n = n;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, n)
}

/// The element sqrt(D) of a quadratic context t^2 + b t + c, where D is the
/// squarefree part of the discriminant b^2 - 4c: sqrt(D) = (2t + b)/f with
/// the sign fixed so the value is positive.
pub fn sqrt_in_ctx(ctx: &std::sync::Arc<FieldContext>) -> Result<(u64, AlgebraicNumber)> {
    if ctx.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    let b = ctx.minpoly()[1].clone();
    let c = ctx.minpoly()[0].clone();
    let disc = &b * &b - BigInt::from(4) * &c;
    if !disc.is_positive() {
        return Err(Error::InvalidContext("non-real quadratic context".into()));
    }
    let disc: u64 = disc
        .to_string()
        .parse()
        .map_err(|_| Error::InvalidContext("discriminant too large".into()))?;
    let (f, d) = squarefree_part(disc);
    let mut root = AlgebraicNumber::new(
        ctx,
        vec![
            Rat::new(b, BigInt::from(f)),
            Rat::new(BigInt::from(2), BigInt::from(f)),
        ],
    )?;
    if root.sign() < 0 {
        root = root.neg();
    }
    debug_assert_eq!(root.mul(&root), AlgebraicNumber::from_int(ctx, d as i64));
    Ok((d, root))
}

/// Minimal unit of norm +1 exceeding 1 in the maximal order of the real
/// quadratic field of the context: for D = 1 mod 4 this may be the
/// half-integer unit (a + b sqrt(D))/2 with a^2 - D b^2 = 4; otherwise it is
/// the fundamental Pell solution.
pub fn minimal_norm_one_unit(ctx: &std::sync::Arc<FieldContext>) -> Result<AlgebraicNumber> {
    let (d, root) = sqrt_in_ctx(ctx)?;
    validate_d(d)?;
    let pell = fundamental_solution(d)?;
    let integral = AlgebraicNumber::from_rat(ctx, Rat::from_integer(pell.x.clone()))
        .add(&root.scale(&Rat::from_integer(pell.y.clone())));
    if d % 4 != 1 {
        return Ok(integral);
    }
    // Search a^2 - D b^2 = 4 with a, b odd (the genuinely half-integral
    // units); the smallest positive b wins. b is bounded by the integral
    // solution, whose (2x, 2y) satisfies the same equation.
    let bound = BigInt::from(2) * &pell.y;
    let mut b = BigInt::one();
    let dd = BigInt::from(d);
    while b < bound {
        let a2 = BigInt::from(4) + &dd * &b * &b;
        let a = a2.sqrt();
        if &a * &a == a2 && (&a % 2u8).is_one() {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let u = AlgebraicNumber::from_rat(ctx, Rat::from_integer(a) * &half)
                .add(&root.scale(&(Rat::from_integer(b.clone()) * &half)));
            debug_assert!(u.mul(&u.galois_conjugate()?).is_one());
            return Ok(u);
        }
        b += 2;
    }
    Ok(integral)
}

/// Least k in 1..=cap with U^k integer-entried, together with U^k.
pub fn smallest_integral_power(u: &Matrix, cap: u64) -> Result<(u64, Matrix)> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), got: u.ncols() });
    }
    // Reject singular input up front.
    if u.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut power = u.clone();
    for k in 1..=cap {
        if power.is_integer() {
            return Ok((k, power));
        }
        power = power.mul(u)?;
    }
    Err(Error::CapExceeded { what: "integral matrix power", cap })
}

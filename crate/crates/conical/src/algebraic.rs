//! Exact arithmetic for real algebraic numbers of degree at most 4.
//!
//! A [`FieldContext`] fixes a monic irreducible integer minimal polynomial
//! together with a rational interval isolating one of its real roots.
//! An [`AlgebraicNumber`] is a polynomial of smaller degree in that root,
//! with rational coefficients. Equality is coefficientwise; the sign of a
//! value is decided by interval refinement of the root, with an exact zero
//! test making the refinement loop total.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::Result;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "num/den" or "num" in lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials over the rationals, lowest degree first.

pub(crate) fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn poly_derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect()
}

/// Remainder of a by b (b nonzero).
pub(crate) fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r: Vec<Rat> = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let coef = &r[dr] / &lead;
        for i in 0..=db {
            let v = &r[dr - db + i] - &coef * &b[i];
            r[dr - db + i] = v;
        }
        poly_trim(&mut r);
        if dr == db {
            break;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Quotient and remainder of a by b.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r: Vec<Rat> = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
    loop {
        poly_trim(&mut r);
        if poly_is_zero(&r) || r.len() - 1 < db {
            break;
        }
        let dr = r.len() - 1;
        let coef = &r[dr] / &lead;
        q[dr - db] = coef.clone();
        for i in 0..=db {
            let v = &r[dr - db + i] - &coef * &b[i];
            r[dr - db + i] = v;
        }
        r.pop();
    }
    poly_trim(&mut q);
    (q, r)
}

/// Sturm chain of p.
fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = Vec::new();
    let mut p0 = p.to_vec();
    poly_trim(&mut p0);
    let mut p1 = poly_derivative(&p0);
    poly_trim(&mut p1);
    chain.push(p0.clone());
    if poly_is_zero(&p1) {
        return chain;
    }
    chain.push(p1.clone());
    loop {
        let r = poly_rem(&p0, &p1);
        if poly_is_zero(&r) {
            break;
        }
        let neg: Vec<Rat> = r.iter().map(|c| -c.clone()).collect();
        chain.push(neg.clone());
        p0 = p1;
        p1 = neg;
    }
    chain
}

fn sign_changes(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = poly_eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of p in the open interval (lo, hi).
pub fn sturm_root_count(p: &[Rat], lo: &Rat, hi: &Rat) -> usize {
    let chain = sturm_chain(p);
    sign_changes(&chain, lo) - sign_changes(&chain, hi)
}

// ---------------------------------------------------------------------------

fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let n = n.abs();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// Irreducibility over Q for a monic integer polynomial of degree <= 4.
/// Degree 2 and 3 reduce to the rational-root test; degree 4 additionally
/// rules out a factorization into two monic integer quadratics.
fn check_irreducible(p: &[BigInt]) -> Result<()> {
    let d = p.len() - 1;
    if d <= 1 {
        return Ok(());
    }
    // Rational roots of a monic integer polynomial are integers dividing p(0).
    if p[0].is_zero() {
        return Err(Error::ReduciblePolynomial("zero constant term (root t=0)".into()));
    }
    for div in integer_divisors(&p[0]) {
        for root in [div.clone(), -div] {
            let mut acc = BigInt::zero();
            for c in p.iter().rev() {
                acc = acc * &root + c;
            }
            if acc.is_zero() {
                return Err(Error::ReduciblePolynomial(format!("integer root {root}")));
            }
        }
    }
    if d == 4 {
        // t^4 + c3 t^3 + c2 t^2 + c1 t + c0 = (t^2+pt+q)(t^2+rt+s)
        let (c0, c1, c2, c3) = (&p[0], &p[1], &p[2], &p[3]);
        for q in integer_divisors(c0) {
            for q in [q.clone(), -q] {
                let s = c0 / &q;
                // p + r = c3, p*r = c2 - q - s, p*s + q*r = c1
                let pr = c2 - &q - &s;
                let disc = c3 * c3 - BigInt::from(4) * &pr;
                if disc.sign() == num::bigint::Sign::Minus {
                    continue;
                }
                let root = disc.sqrt();
                if &root * &root != disc {
                    continue;
                }
                for r2 in [(c3 - &root), (c3 + &root)] {
                    if (&r2 % 2u8).is_zero() {
                        let rr: BigInt = &r2 / 2;
                        let pp: BigInt = c3 - &rr;
                        if &pp * &s + &q * &rr == *c1 {
                            return Err(Error::ReduciblePolynomial(format!(
                                "quadratic factor t^2 + {rr} t + {q}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k * k == n)
}

pub fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

// ---------------------------------------------------------------------------

/// A real algebraic field presentation Q[t]/(p(t)) with a designated real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    /// Monic integer coefficients, lowest degree first, length d+1.
    minpoly: Vec<BigInt>,
    root_lo: Rat,
    root_hi: Rat,
    /// Some(D) when minpoly = t^2 - D for squarefree D >= 2.
    sqrt_d: Option<u64>,
}

impl FieldContext {
    /// The degenerate degree-1 context t - 0, housing pure-rational data.
    pub fn rational() -> Arc<FieldContext> {
        Arc::new(FieldContext {
            minpoly: vec![BigInt::zero(), BigInt::one()],
            root_lo: rat_int(-1),
            root_hi: rat_int(1),
            sqrt_d: None,
        })
    }

    /// Q(sqrt(D)) for squarefree D >= 2.
    pub fn sqrt(d: u64) -> Result<Arc<FieldContext>> {
        if is_perfect_square(d) {
            return Err(Error::PerfectSquare(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let lo = (d as f64).sqrt().floor() as i64;
        Ok(Arc::new(FieldContext {
            minpoly: vec![-BigInt::from(d), BigInt::zero(), BigInt::one()],
            root_lo: rat_int(lo),
            root_hi: rat_int(lo + 1),
            sqrt_d: Some(d),
        }))
    }

    /// General constructor; verifies monicity, irreducibility (degree <= 4),
    /// and that exactly one real root lies in (lo, hi).
    pub fn new(minpoly: Vec<BigInt>, root_lo: Rat, root_hi: Rat) -> Result<Arc<FieldContext>> {
        let d = minpoly.len().saturating_sub(1);
        if d < 1 || d > 4 {
            return Err(Error::InvalidContext(format!("degree {d} out of range 1..=4")));
        }
        if !minpoly[d].is_one() {
            return Err(Error::InvalidContext("minimal polynomial must be monic".into()));
        }
        check_irreducible(&minpoly)?;
        if root_lo >= root_hi {
            return Err(Error::InvalidContext("empty root interval".into()));
        }
        let p: Vec<Rat> = minpoly.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let vlo = poly_eval(&p, &root_lo);
        let vhi = poly_eval(&p, &root_hi);
        if vlo.is_zero() || vhi.is_zero() {
            return Err(Error::InvalidContext("root interval endpoint is a root".into()));
        }
        if vlo.is_positive() == vhi.is_positive() {
            return Err(Error::InvalidContext("no sign change over the root interval".into()));
        }
        if sturm_root_count(&p, &root_lo, &root_hi) != 1 {
            return Err(Error::InvalidContext(
                "root interval does not isolate exactly one real root".into(),
            ));
        }
        let sqrt_d = if d == 2 && minpoly[1].is_zero() && minpoly[0].is_negative() {
            let dd = (-minpoly[0].clone()).to_string().parse::<u64>().ok();
            match dd {
                Some(dd) if is_squarefree(dd) && !is_perfect_square(dd) && root_lo >= Rat::zero() => {
                    Some(dd)
                }
                _ => None,
            }
        } else {
            None
        };
        Ok(Arc::new(FieldContext {
            minpoly,
            root_lo,
            root_hi,
            sqrt_d,
        }))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn root_interval(&self) -> (&Rat, &Rat) {
        (&self.root_lo, &self.root_hi)
    }

    pub fn is_quadratic_sqrt(&self) -> bool {
        self.sqrt_d.is_some()
    }

    pub fn sqrt_disc(&self) -> Option<u64> {
        self.sqrt_d
    }

    fn minpoly_rat(&self) -> Vec<Rat> {
        self.minpoly.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    /// f64 approximation of the designated root (diagnostics/plotting only).
    pub fn root_approx(&self) -> f64 {
        let p = self.minpoly_rat();
        if self.degree() == 1 {
            let r = -self.minpoly[0].clone();
            return bigint_f64(&r);
        }
        let mut lo = self.root_lo.clone();
        let mut hi = self.root_hi.clone();
        let slo = poly_eval(&p, &lo).is_positive();
        for _ in 0..80 {
            let mid = (&lo + &hi) / rat_int(2);
            if poly_eval(&p, &mid).is_positive() == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rat_f64(&lo)
    }
}

fn bigint_f64(n: &BigInt) -> f64 {
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

pub fn rat_f64(r: &Rat) -> f64 {
    bigint_f64(r.numer()) / bigint_f64(r.denom())
}

// ---------------------------------------------------------------------------

/// An element of the field fixed by a [`FieldContext`], as a coefficient
/// vector of length equal to the context degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rat>,
}

impl AlgebraicNumber {
    pub fn new(ctx: &Arc<FieldContext>, mut coeffs: Vec<Rat>) -> Result<Self> {
        let d = ctx.degree();
        if coeffs.len() > d {
            return Err(Error::Parse(format!(
                "coefficient vector of length {} exceeds field degree {d}",
                coeffs.len()
            )));
        }
        coeffs.resize(d, Rat::zero());
        Ok(AlgebraicNumber { ctx: Arc::clone(ctx), coeffs })
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        AlgebraicNumber {
            ctx: Arc::clone(ctx),
            coeffs: vec![Rat::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rat(ctx, Rat::one())
    }

    pub fn from_rat(ctx: &Arc<FieldContext>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); ctx.degree()];
        coeffs[0] = r;
        AlgebraicNumber { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn from_int(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_rat(ctx, rat_int(n))
    }

    /// The root itself (the image of t). For degree-1 contexts this is the
    /// rational root.
    pub fn generator(ctx: &Arc<FieldContext>) -> Self {
        if ctx.degree() == 1 {
            let r = Rat::from_integer(-ctx.minpoly[0].clone());
            return Self::from_rat(ctx, r);
        }
        let mut coeffs = vec![Rat::zero(); ctx.degree()];
        coeffs[1] = Rat::one();
        AlgebraicNumber { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn same_ctx(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    fn assert_ctx(&self, other: &Self) {
        assert!(self.same_ctx(other), "field context mismatch");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the value lies in Q (all higher coefficients vanish).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.coeffs[0].denom().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        AlgebraicNumber { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        AlgebraicNumber { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn neg(&self) -> Self {
        AlgebraicNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        AlgebraicNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_ctx(other);
        let d = self.ctx.degree();
        if d == 1 {
            return AlgebraicNumber {
                ctx: Arc::clone(&self.ctx),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = &prod[i + j] + a * b;
                prod[i + j] = v;
            }
        }
        // Reduce modulo the monic minimal polynomial.
        let mp = self.ctx.minpoly_rat();
        for i in (d..prod.len()).rev() {
            let c = prod[i].clone();
            if c.is_zero() {
                continue;
            }
            prod[i] = Rat::zero();
            for j in 0..d {
                let v = &prod[i - d + j] - &c * &mp[j];
                prod[i - d + j] = v;
            }
        }
        prod.truncate(d);
        AlgebraicNumber { ctx: Arc::clone(&self.ctx), coeffs: prod }
    }

    /// Multiplicative inverse via the extended polynomial gcd with minpoly.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rat(&self.ctx, Rat::one() / self.coeffs[0].clone()));
        }
        let m = self.ctx.minpoly_rat();
        let mut a = m;
        let mut x: Vec<Rat> = self.coeffs.clone();
        poly_trim(&mut x);
        // Extended Euclid: maintain s with s * x ≡ r (mod minpoly).
        let mut s_prev: Vec<Rat> = vec![Rat::zero()];
        let mut s_cur: Vec<Rat> = vec![Rat::one()];
        let mut r_prev = std::mem::take(&mut a);
        let mut r_cur = x;
        while !poly_is_zero(&r_cur) && r_cur.len() > 1 {
            let (q, r) = poly_divmod(&r_prev, &r_cur);
            let s_next = poly_sub(&s_prev, &poly_mul(&q, &s_cur));
            r_prev = std::mem::replace(&mut r_cur, r);
            s_prev = std::mem::replace(&mut s_cur, s_next);
        }
        if poly_is_zero(&r_cur) {
            // gcd has positive degree: impossible for irreducible minpoly.
            return Err(Error::DivisionByZero);
        }
        let c = r_cur[0].clone(); // nonzero constant gcd
        let mut inv: Vec<Rat> = s_cur.iter().map(|v| v / &c).collect();
        // s_cur may exceed degree d-1 in pathological chains; reduce.
        let d = self.ctx.degree();
        if inv.len() > d {
            let mp = self.ctx.minpoly_rat();
            inv = poly_rem(&inv, &mp);
        }
        inv.resize(d, Rat::zero());
        Ok(AlgebraicNumber { ctx: Arc::clone(&self.ctx), coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Sign of the real embedding at the designated root: -1, 0 or +1.
    ///
    /// Exact zero test first (zero iff all coefficients vanish, since the
    /// degree is below the degree of the irreducible minimal polynomial),
    /// then interval refinement of the root until the interval image of the
    /// value excludes zero.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.coeffs[0].is_positive() { 1 } else { -1 };
        }
        if let Some(d) = self.ctx.sqrt_d {
            // a + b sqrt(d): compare a^2 against d b^2 when the parts have
            // opposite signs; no interval refinement needed.
            let a = &self.coeffs[0];
            let b = &self.coeffs[1];
            if a.is_zero() {
                return if b.is_positive() { 1 } else { -1 };
            }
            if a.is_positive() == b.is_positive() {
                return if a.is_positive() { 1 } else { -1 };
            }
            let lhs = a * a;
            let rhs = b * b * Rat::from_integer(BigInt::from(d));
            return match (lhs.cmp(&rhs), a.is_positive()) {
                (std::cmp::Ordering::Greater, true) => 1,
                (std::cmp::Ordering::Greater, false) => -1,
                (std::cmp::Ordering::Less, true) => -1,
                (std::cmp::Ordering::Less, false) => 1,
                (std::cmp::Ordering::Equal, _) => 0,
            };
        }
        let d = self.ctx.degree();
        debug_assert!(d >= 2);
        let mp = self.ctx.minpoly_rat();
        let mut lo = self.ctx.root_lo.clone();
        let mut hi = self.ctx.root_hi.clone();
        let sign_at_lo = poly_eval(&mp, &lo).is_positive();
        for iter in 0.. {
            let (vlo, vhi) = interval_eval(&self.coeffs, &lo, &hi);
            if vlo.is_positive() {
                return 1;
            }
            if vhi.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / rat_int(2);
            // Irreducible minpoly of degree >= 2 has no rational root, so the
            // midpoint evaluation is never zero.
            if poly_eval(&mp, &mid).is_positive() == sign_at_lo {
                lo = mid;
            } else {
                hi = mid;
            }
            assert!(iter < 10_000, "sign refinement failed to converge");
        }
        unreachable!()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        match self.sub(other).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    /// Galois conjugate in a quadratic context: the image of the root t
    /// under the nontrivial field automorphism (t maps to -b - t for
    /// minpoly t^2 + b t + c). For t^2 - D this is a + b sqrt(D) -> a - b sqrt(D).
    pub fn galois_conjugate(&self) -> Result<Self> {
        if self.ctx.degree() != 2 {
            return Err(Error::NotQuadratic);
        }
        let b = Rat::from_integer(self.ctx.minpoly[1].clone());
        let c0 = &self.coeffs[0] - &self.coeffs[1] * &b;
        let c1 = -self.coeffs[1].clone();
        Ok(AlgebraicNumber { ctx: Arc::clone(&self.ctx), coeffs: vec![c0, c1] })
    }

    /// Rational part in a sqrt context (coefficient of 1).
    pub fn rat_part(&self) -> Rat {
        self.coeffs[0].clone()
    }

    /// Coefficient of the root in a degree-2 context.
    pub fn irr_part(&self) -> Rat {
        self.coeffs[1].clone()
    }

    /// Largest integer <= self, by interval refinement.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.to_rat() {
            return r.floor().to_integer();
        }
        let mp = self.ctx.minpoly_rat();
        let mut lo = self.ctx.root_lo.clone();
        let mut hi = self.ctx.root_hi.clone();
        let sign_at_lo = poly_eval(&mp, &lo).is_positive();
        loop {
            let (vlo, vhi) = interval_eval(&self.coeffs, &lo, &hi);
            let flo = vlo.floor().to_integer();
            let fhi = vhi.floor().to_integer();
            if flo == fhi {
                // An irrational value is never an integer, so the floor is
                // determined as soon as both interval ends agree.
                return flo;
            }
            let mid = (&lo + &hi) / rat_int(2);
            if poly_eval(&mp, &mid).is_positive() == sign_at_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    pub fn approx(&self) -> f64 {
        let t = self.ctx.root_approx();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rat_f64(c);
        }
        acc
    }

    /// Textual encoding: coefficients as "num/den" strings, lowest terms.
    pub fn encode(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rat).collect()
    }

    pub fn decode(ctx: &Arc<FieldContext>, parts: &[String]) -> Result<Self> {
        let coeffs = parts.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, coeffs)
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let v = &out[i + j] + x * y;
            out[i + j] = v;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        let v = &out[i] - y;
        out[i] = v;
    }
    poly_trim(&mut out);
    out
}

/// Interval image of a polynomial over [lo, hi], by Horner with interval
/// arithmetic.
fn interval_eval(coeffs: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut alo = Rat::zero();
    let mut ahi = Rat::zero();
    for c in coeffs.iter().rev() {
        // [alo, ahi] * [lo, hi]
        let products = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut pmin = products[0].clone();
        let mut pmax = products[0].clone();
        for p in &products[1..] {
            if *p < pmin {
                pmin = p.clone();
            }
            if *p > pmax {
                pmax = p.clone();
            }
        }
        alo = pmin + c;
        ahi = pmax + c;
    }
    (alo, ahi)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", fmt_rat(c))?,
                1 => write!(f, "{}*t", fmt_rat(c))?,
                _ => write!(f, "{}*t^{i}", fmt_rat(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

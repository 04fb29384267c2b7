//! Torsion certificates, their verification, and reachability verdicts.
//!
//! A certificate exhibits a function `φ = u(x)·y - w(x)` whose divisor is
//! `m(P) - m(O)`. The divisor statement reduces to a polynomial identity
//! through the norm `w^d - u^d·f`, so a certificate can be replayed with
//! nothing but polynomial arithmetic. Exactness of the order then follows
//! from a short list of rules on `(n, d, m)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{AffinePoint, Curve, MonicNormalization};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::{gen_binom, is_prime, Field, GaussianRational, Rational};

/// Coefficient field of certificates.
pub type Scalar = GaussianRational;

/// Largest `n`, `m` or witness degree the verifier will expand.
pub const MAX_DEGREE: u64 = 4096;
/// Largest `d` the verifier will expand.
pub const MAX_D: u64 = 64;

/// `w^d - u^d·f`, the norm of `u(x)·y - w(x)` to the `x`-line.
pub fn norm_poly<F: Field>(u: &Poly<F>, w: &Poly<F>, f: &Poly<F>, d: u64) -> Poly<F> {
    &w.pow(d) - &(&u.pow(d) * f)
}

/// Which polynomial identity the witnesses satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `v^d - u^d·f = A·(x-a)^m` with `A != 0`; the function is `u·y - v`.
    ShiftPower,
    /// `x^(e·d)·f + v^d = (1+x)^m`; the function is `x^e·y - λ·v` with
    /// `λ^d = -1`, and `a = -1`.
    InfinityShift,
    /// `f - v^d = (x-a)^n`; the function is `y - v` and `m = n`.
    PureOrderN,
    /// `f = (x-a)·v`; the function is `x - a` and `m = d`.
    Ramification,
}

impl IdentityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::ShiftPower => "shift-power",
            IdentityKind::InfinityShift => "infinity-shift",
            IdentityKind::PureOrderN => "pure-order-n",
            IdentityKind::Ramification => "ramification",
        }
    }
}

/// Why the order is exactly `m` and not a proper divisor of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactnessRule {
    Prime,
    #[serde(rename = "below-2n")]
    Below2n,
    #[serde(rename = "odd-below-3n")]
    OddBelow3n,
    /// `y(P) = 0` and `m = d`.
    RamificationPoint,
    /// Every proper divisor of `m` that is at least `n` equals `n`, and the
    /// point is shown not to be `n`-torsion.
    OrderNExcluded,
}

impl ExactnessRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ExactnessRule::Prime => "prime",
            ExactnessRule::Below2n => "below-2n",
            ExactnessRule::OddBelow3n => "odd-below-3n",
            ExactnessRule::RamificationPoint => "ramification-point",
            ExactnessRule::OrderNExcluded => "order-n-excluded",
        }
    }

    /// First of `prime`, `below-2n`, `odd-below-3n` that holds for an
    /// unramified point.
    pub fn choose(n: u64, m: u64) -> Option<ExactnessRule> {
        if is_prime(m) {
            Some(ExactnessRule::Prime)
        } else if m < 2 * n {
            Some(ExactnessRule::Below2n)
        } else if m % 2 == 1 && m < 3 * n {
            Some(ExactnessRule::OddBelow3n)
        } else {
            None
        }
    }
}

/// The torsion point, or a marker when its ordinate lies outside the
/// supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum CertPoint {
    Affine(AffinePoint<Scalar>),
    Symbolic { symbolic: bool },
}

impl CertPoint {
    pub fn symbolic() -> Self {
        CertPoint::Symbolic { symbolic: true }
    }

    pub fn affine(&self) -> Option<&AffinePoint<Scalar>> {
        match self {
            CertPoint::Affine(p) => Some(p),
            CertPoint::Symbolic { .. } => None,
        }
    }
}

/// Self-contained evidence that `P` has order exactly `m` on `curve`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub curve: Curve<Scalar>,
    pub point: CertPoint,
    pub m: u64,
    pub identity_kind: IdentityKind,
    pub u: Poly<Scalar>,
    pub v: Poly<Scalar>,
    pub a: Scalar,
    pub e: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Scalar>,
    pub exactness_rule: ExactnessRule,
}

impl TorsionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The curve over the rationals, when every coefficient is real.
    pub fn rational_curve(&self) -> Option<Curve<Rational>> {
        let coeffs = self
            .curve
            .f()
            .coeffs()
            .iter()
            .map(|c| c.is_real().then(|| c.re.clone()))
            .collect::<Option<Vec<_>>>()?;
        Some(Curve::from_parts_unchecked(
            self.curve.d(),
            self.curve.n(),
            Poly::new(coeffs),
        ))
    }
}

/// Outcome of one verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per failed check, e.g. `identity check failed: ...`.
    pub fn failure_summary(&self) -> String {
        self.failed()
            .map(|c| format!("{} check failed: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

struct Report {
    checks: Vec<CheckResult>,
}

impl Report {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            valid: self.checks.iter().all(|c| c.passed),
            checks: self.checks,
        }
    }
}

fn deg(p: &Poly<Scalar>) -> Option<u64> {
    p.degree().map(|k| k as u64)
}

fn minus_one() -> Scalar {
    -Scalar::one()
}

/// Replays every check of `cert`. Malformed or false certificates produce a
/// report with failed checks; this never panics or errors.
pub fn verify_certificate(cert: &TorsionCertificate) -> VerificationReport {
    let mut r = Report { checks: Vec::new() };
    let (d, n, m) = (cert.curve.d(), cert.curve.n(), cert.m);
    let f = cert.curve.f();

    let sizes_ok = d <= MAX_D
        && n <= MAX_DEGREE
        && m <= MAX_DEGREE
        && cert.e.saturating_mul(d) <= MAX_DEGREE
        && deg(&cert.u).unwrap_or(0) <= MAX_DEGREE
        && deg(&cert.v).unwrap_or(0) <= MAX_DEGREE
        && deg(f).unwrap_or(0) <= MAX_DEGREE;
    if !r.record(
        "size-guard",
        sizes_ok,
        format!("d <= {MAX_D}, degrees <= {MAX_DEGREE}"),
    ) {
        return r.finish();
    }

    let curve_ok = match cert.curve.validate() {
        Ok(()) => r.record("curve", true, cert.curve.to_string()),
        Err(e) => r.record("curve", false, e.to_string()),
    };
    r.record("order-range", m >= 2, format!("m = {m}"));

    let kind = cert.identity_kind;
    let one = Poly::<Scalar>::one();
    let (shape_ok, shape_detail) = match kind {
        IdentityKind::ShiftPower => (
            !cert.u.is_zero() && cert.e == 0 && cert.lambda.is_none(),
            "u nonzero, e = 0, no lambda",
        ),
        IdentityKind::InfinityShift => (
            cert.u == Poly::monomial(Scalar::one(), cert.e as usize) && cert.e >= 1,
            "u = x^e with e >= 1",
        ),
        IdentityKind::PureOrderN => (
            cert.u == one && cert.e == 0 && cert.lambda.is_none(),
            "u = 1, e = 0, no lambda",
        ),
        IdentityKind::Ramification => (
            cert.u.is_zero() && cert.e == 0 && cert.lambda.is_none(),
            "u = 0, e = 0, no lambda",
        ),
    };
    r.record("witness-shape", shape_ok, shape_detail);

    let (pole_ok, pole_detail) = match kind {
        IdentityKind::ShiftPower => {
            let from_v = deg(&cert.v).map(|k| d * k);
            let from_u = deg(&cert.u).map(|k| d * k + n);
            let pole = from_v.max(from_u);
            (
                pole == Some(m),
                format!("pole order {pole:?} at infinity, m = {m}"),
            )
        }
        IdentityKind::InfinityShift => {
            let from_v = deg(&cert.v).map(|k| d * k);
            let pole = from_v.max(Some(d * cert.e + n));
            (
                pole == Some(m),
                format!("pole order {pole:?} at infinity, m = {m}"),
            )
        }
        IdentityKind::PureOrderN => {
            let small_v = deg(&cert.v).is_none_or(|k| d * k < n);
            (m == n && small_v, format!("m = {m}, n = {n}, d·deg v < n"))
        }
        IdentityKind::Ramification => (m == d, format!("m = {m}, d = {d}")),
    };
    r.record("pole-order", pole_ok, pole_detail);

    if pole_ok {
        let x_minus_a = Poly::x_minus(cert.a.clone());
        let (ok, detail) = match kind {
            IdentityKind::ShiftPower => {
                let norm = norm_poly(&cert.u, &cert.v, f, d);
                let lead = norm.leading_coeff().cloned().unwrap_or_else(Scalar::zero);
                let target = x_minus_a.pow(m).scale(&lead);
                (
                    !lead.is_zero() && norm == target,
                    format!("v^d - u^d·f = {norm}"),
                )
            }
            IdentityKind::InfinityShift => {
                let lhs = &(f.shl((cert.e * d) as usize)) + &cert.v.pow(d);
                let rhs = Poly::new(vec![Scalar::one(), Scalar::one()]).pow(m);
                (
                    cert.a == minus_one() && lhs == rhs,
                    "x^(ed)·f + v^d = (1+x)^m with a = -1".to_string(),
                )
            }
            IdentityKind::PureOrderN => (
                (f - &cert.v.pow(d)) == x_minus_a.pow(n),
                "f - v^d = (x-a)^n".to_string(),
            ),
            IdentityKind::Ramification => (f == &(&x_minus_a * &cert.v), "f = (x-a)·v".to_string()),
        };
        r.record("identity", ok, detail);
    } else {
        r.record("identity", false, "not evaluated: degree mismatch");
    }

    if kind == IdentityKind::InfinityShift {
        match &cert.lambda {
            Some(l) => {
                let ok = l.pow(d) == minus_one();
                r.record("lambda", ok, format!("lambda^d = {}", l.pow(d)));
            }
            None => {
                let ok = matches!(cert.point, CertPoint::Symbolic { .. });
                r.record("lambda", ok, "lambda omitted, point must be symbolic");
            }
        }
    }

    // u(a), the coefficient of y in the witness function at x = a
    let u_at_a = cert.u.eval(&cert.a);
    let w_at_a = match (&cert.lambda, kind) {
        (Some(l), IdentityKind::InfinityShift) => Some(cert.v.eval(&cert.a) * l.clone()),
        (None, IdentityKind::InfinityShift) => None,
        _ => Some(cert.v.eval(&cert.a)),
    };

    let mut point_usable = false;
    match &cert.point {
        CertPoint::Affine(p) => {
            r.record(
                "point-abscissa",
                p.x == cert.a,
                format!("x(P) = {}, a = {}", p.x, cert.a),
            );
            let on = cert.curve.contains(p);
            r.record("point-on-curve", on, p.to_string());
            if kind == IdentityKind::Ramification {
                r.record(
                    "ordinate",
                    p.y.is_zero(),
                    format!("y(P) = {} must vanish", p.y),
                );
            } else {
                r.record(
                    "ordinate",
                    !p.y.is_zero(),
                    format!("y(P) = {} must not vanish", p.y),
                );
                let zero_ok = !u_at_a.is_zero()
                    && w_at_a
                        .as_ref()
                        .is_some_and(|w| &(u_at_a.clone() * p.y.clone()) == w);
                r.record(
                    "zero-at-point",
                    zero_ok,
                    "u(a)·y(P) = w(a) with u(a) != 0".to_string(),
                );
            }
            point_usable = on && p.x == cert.a;
        }
        CertPoint::Symbolic { symbolic } => {
            let ok =
                *symbolic && kind == IdentityKind::InfinityShift && !cert.v.eval(&cert.a).is_zero();
            r.record(
                "ordinate",
                ok,
                "symbolic point allowed for infinity-shift with v(a) != 0",
            );
        }
    }

    let rule = cert.exactness_rule;
    let (exact_ok, exact_detail) = match rule {
        ExactnessRule::RamificationPoint => (
            kind == IdentityKind::Ramification && m == d,
            format!("ramification point needs m = d = {d}"),
        ),
        _ if kind == IdentityKind::Ramification => (
            false,
            "ramification identity needs the ramification-point rule".to_string(),
        ),
        ExactnessRule::Prime => (is_prime(m), format!("{m} is prime")),
        ExactnessRule::Below2n => (m < 2 * n, format!("{m} < 2·{n}")),
        ExactnessRule::OddBelow3n => (m % 2 == 1 && m < 3 * n, format!("{m} odd and < 3·{n}")),
        ExactnessRule::OrderNExcluded => {
            let structure = only_large_proper_divisor_is_n(n, m);
            let excluded = if m % n != 0 {
                Some(true)
            } else if let (true, true, Some(p)) = (curve_ok, point_usable, cert.point.affine()) {
                is_n_torsion(&cert.curve, p).ok().map(|t| !t)
            } else {
                None
            };
            (
                structure && excluded == Some(true),
                format!("proper divisors of {m} that are >= {n} equal {n}; n-torsion excluded: {excluded:?}"),
            )
        }
    };
    r.record(
        "exactness",
        exact_ok,
        format!("{}: {exact_detail}", rule.as_str()),
    );

    r.finish()
}

/// Moves a shift-power certificate onto the monic model of its curve.
///
/// With `(X, Y) ↦ (αX, βY)` the map from the monic model, the witness
/// `u(x)·y - v(x)` pulls back to `β·u(αX)·Y - v(αX)`, whose norm is the
/// original norm evaluated at `αX`, a multiple of `(X - a/α)^m`.
pub fn transport_to_monic(
    cert: &TorsionCertificate,
    normalization: &MonicNormalization<Scalar>,
) -> Result<TorsionCertificate> {
    if cert.identity_kind != IdentityKind::ShiftPower {
        return Err(Error::InvalidInput(format!(
            "only shift-power certificates can be rescaled, got {}",
            cert.identity_kind.as_str()
        )));
    }
    if normalization.source != cert.curve {
        return Err(Error::InvalidInput(
            "normalization is for a different curve".into(),
        ));
    }
    let alpha = &normalization.x_scale;
    let alpha_inv = alpha
        .inv()
        .ok_or_else(|| Error::Internal("zero x scale".into()))?;
    let point = match &cert.point {
        CertPoint::Affine(p) => CertPoint::Affine(normalization.to_target(p)?),
        CertPoint::Symbolic { symbolic } => CertPoint::Symbolic {
            symbolic: *symbolic,
        },
    };
    Ok(TorsionCertificate {
        curve: normalization.target.clone(),
        point,
        u: cert.u.scale_arg(alpha).scale(&normalization.y_scale),
        v: cert.v.scale_arg(alpha),
        a: cert.a.clone() * alpha_inv,
        ..cert.clone()
    })
}

/// Parses and verifies certificate JSON.
pub fn verify_certificate_json(text: &str) -> Result<VerificationReport> {
    Ok(verify_certificate(&TorsionCertificate::from_json(text)?))
}

fn only_large_proper_divisor_is_n(n: u64, m: u64) -> bool {
    (1..m)
        .filter(|k| m.is_multiple_of(*k) && *k >= n)
        .all(|k| k == n)
}

/// Whether the class of `(P) - (O)` is killed by `n`, for an affine point
/// with nonzero ordinate.
///
/// Such a class is `n`-torsion exactly when some `y - g(x)` with
/// `deg g <= (n-1)/d` vanishes to order `n` at `P`. With `t = x - a` as local
/// parameter, `g` must agree with the power-series branch of `y` through `P`,
/// which is tested as `f(a+t) ≡ T(t)^d (mod t^n)` for the truncated branch `T`.
pub fn is_n_torsion<F: Field>(curve: &Curve<F>, p: &AffinePoint<F>) -> Result<bool> {
    let (d, n) = (curve.d(), curve.n());
    if p.y.is_zero() {
        return Err(Error::ZeroOrdinate(p.to_string()));
    }
    if !curve.contains(p) {
        return Err(Error::InvalidInput(format!("{p} is not on {curve}")));
    }
    let keep = ((n - 1) / d) as usize + 1;
    let local = curve.f().shift(&p.x);
    let c0 = local.coeff(0);
    let c0_inv = c0
        .inv()
        .ok_or_else(|| Error::Internal("f(a) vanishes at an unramified point".into()))?;
    // f(a+t)/f(a) = 1 + h with h(0) = 0
    let h = (&local.scale(&c0_inv) - &Poly::one()).truncate(keep);
    let exponent = Rational::new(1, d)?;
    let mut branch = Poly::<F>::zero();
    let mut h_pow = Poly::<F>::one();
    for k in 0..keep {
        let coeff = F::from_rational(gen_binom(&exponent, k as u64));
        branch = &branch + &h_pow.scale(&coeff);
        h_pow = (&h_pow * &h).truncate(keep);
    }
    let t = branch.scale(&p.y);
    let residue = (&local - &t.pow(d)).truncate(n as usize);
    Ok(residue.is_zero())
}

/// Applicability of the reachability rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    ReachableConstructive,
    ReachableExistence,
    Unreachable,
    OpenPerPaper,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ReachableConstructive => "ReachableConstructive",
            Status::ReachableExistence => "ReachableExistence",
            Status::Unreachable => "Unreachable",
            Status::OpenPerPaper => "OpenPerPaper",
        }
    }
}

/// The rule that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `m = d`: roots of `f` give points of order `d`.
    OrderDPoints,
    /// `1 < m < n`, `m != d`: no torsion order lies in this gap.
    BelowNGap,
    /// `m = n`: `f = (x-a)^n + v^d`.
    OrderN,
    /// `n < m < nd` but `m` is not `j·n` mod `d` for any `j <= m/n`.
    PoleOrderCongruence,
    /// `d | m` and `n - m + m/d >= 0`.
    DivisibleByDConstruction,
    /// `d = 2`, `m = 2n`.
    TwiceNConstruction,
    /// `m = m0` with `n - m0 + m0/d < 0`.
    M0Obstruction,
    /// `m = n + d` with `d^2 - 2d >= n`.
    NPlusDObstruction,
    /// `m = n + e·d` with `m > d(e·d - 1)`.
    NPlusEdConstruction,
    Undecided,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::OrderDPoints => "order-d-points",
            Rule::BelowNGap => "below-n-gap",
            Rule::OrderN => "order-n",
            Rule::PoleOrderCongruence => "pole-order-congruence",
            Rule::DivisibleByDConstruction => "divisible-by-d-construction",
            Rule::TwiceNConstruction => "twice-n-construction",
            Rule::M0Obstruction => "m0-obstruction",
            Rule::NPlusDObstruction => "n-plus-d-obstruction",
            Rule::NPlusEdConstruction => "n-plus-ed-construction",
            Rule::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integers the rules work with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDetail {
    /// `floor(m/n)`.
    pub k: u64,
    /// Least `j <= k` with `m ≡ j·n (mod d)`, when `n < m < nd`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    /// `m/d` when `d | m`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    /// The multiple of `d` strictly between `n` and `n + d`.
    pub m0: u64,
    pub ell0: u64,
    /// `n + d`.
    pub m1: u64,
    /// `(m - n)/d` when `m ≡ n (mod d)` and `m > n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub status: Status,
    pub deciding_rule: Rule,
    pub detail: VerdictDetail,
    pub explanation: String,
}

/// Checks `d >= 2`, `n > d` and `gcd(n, d) = 1`.
pub fn check_nd(n: u64, d: u64) -> Result<()> {
    if d < 2 || n <= d {
        return Err(Error::Order { n, d });
    }
    let g = n.gcd(&d);
    if g != 1 {
        return Err(Error::Gcd { n, d, gcd: g });
    }
    Ok(())
}

/// Least `j` in `0..=floor(M/n)` with `M ≡ j·n (mod d)`.
pub fn congruence_witness(n: u64, d: u64, big_m: u64) -> Result<Option<u64>> {
    if d == 0 || n == 0 {
        return Err(Error::Precondition("n and d must be positive".into()));
    }
    if big_m <= 1 || (big_m as u128) >= (n as u128) * (d as u128) {
        return Err(Error::Precondition(format!(
            "M = {big_m} must satisfy 1 < M < n·d = {}",
            n as u128 * d as u128
        )));
    }
    let k = big_m / n;
    Ok((0..=k).find(|j| (big_m % d) == ((j % d) * (n % d)) % d))
}

/// Whether some `j <= floor(M/n)` has `M ≡ j·n (mod d)`, for `1 < M < nd`.
pub fn pole_order_congruence(n: u64, d: u64, big_m: u64) -> Result<bool> {
    Ok(congruence_witness(n, d, big_m)?.is_some())
}

/// Decides `(n, d, m)` with the strongest applicable rule.
pub fn reachability_verdict(n: u64, d: u64, m: u64) -> Result<Verdict> {
    check_nd(n, d)?;
    if m < 2 {
        return Err(Error::InvalidInput(format!("m = {m} must be at least 2")));
    }
    let m0 = d * ((n + d) / d);
    let ell0 = m0 / d;
    let m1 = n + d;
    let mut detail = VerdictDetail {
        k: m / n,
        j: None,
        ell: m.is_multiple_of(d).then_some(m / d),
        m0,
        ell0,
        m1,
        e: (m > n && (m - n).is_multiple_of(d)).then(|| (m - n) / d),
    };
    let verdict = |status, rule, detail: VerdictDetail, explanation: String| Verdict {
        n,
        d,
        m,
        status,
        deciding_rule: rule,
        detail,
        explanation,
    };

    if m == d {
        return Ok(verdict(
            Status::ReachableConstructive,
            Rule::OrderDPoints,
            detail,
            format!("points with y = 0 have order d = {d}"),
        ));
    }
    if m < n {
        return Ok(verdict(
            Status::Unreachable,
            Rule::BelowNGap,
            detail,
            format!("torsion orders are d = {d} or at least n = {n}"),
        ));
    }
    if m == n {
        return Ok(verdict(
            Status::ReachableConstructive,
            Rule::OrderN,
            detail,
            format!("f = x^{n} + 1 has (0, 1) of order {n}"),
        ));
    }
    if (m as u128) < (n as u128) * (d as u128) {
        detail.j = congruence_witness(n, d, m)?;
        if detail.j.is_none() {
            return Ok(verdict(
                Status::Unreachable,
                Rule::PoleOrderCongruence,
                detail,
                format!(
                    "{m} mod {d} = {} is not j·{n} mod {d} for any j <= {}",
                    m % d,
                    m / n
                ),
            ));
        }
    }
    if let Some(ell) = detail.ell {
        let slack = n as i128 - m as i128 + ell as i128;
        if slack >= 0 {
            let rule = if d == 2 && m == 2 * n {
                Rule::TwiceNConstruction
            } else {
                Rule::DivisibleByDConstruction
            };
            return Ok(verdict(
                Status::ReachableConstructive,
                rule,
                detail,
                format!("n - m + m/d = {slack} >= 0"),
            ));
        }
        if m == m0 {
            return Ok(verdict(
                Status::Unreachable,
                Rule::M0Obstruction,
                detail,
                format!("m0 = {m0}, n - m0 + m0/d = {slack} < 0"),
            ));
        }
    }
    if let Some(e) = detail.e {
        let ed = e as u128 * d as u128;
        let bound = d as u128 * (ed - 1);
        let holds = m as u128 > bound;
        if holds {
            let status = if d.is_multiple_of(2) && d > 2 {
                Status::ReachableExistence
            } else {
                Status::ReachableConstructive
            };
            return Ok(verdict(
                status,
                Rule::NPlusEdConstruction,
                detail,
                format!("m = n + {e}·{d} = {m} > d(ed - 1) = {bound}"),
            ));
        }
        if e == 1 {
            return Ok(verdict(
                Status::Unreachable,
                Rule::NPlusDObstruction,
                detail,
                format!("d^2 - 2d = {} is not below n = {n}", d * d - 2 * d),
            ));
        }
    }
    Ok(verdict(
        Status::OpenPerPaper,
        Rule::Undecided,
        detail,
        "no rule decides this triple".to_string(),
    ))
}

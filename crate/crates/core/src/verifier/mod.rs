//! Evaluates both sides of each identity through separate call paths and
//! reports exact equality or the p-adic valuation of the difference.

mod report;
mod suite;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{parse_rational, rational_to_string, Poly, RatFunc};
use crate::dedekind::{
    bracket_integral, bracket_moment, etilde_int, etilde_padic, euler_polynomial, mod_representative,
    mod_representative_p_inverse, padic_dc_sum, periodic_euler, q_dc_sum_scaled, DCSumParams, EtildeS,
};
use crate::error::{Error, Result};
use crate::measure::{fermionic_integral, mu_q, mu_q_symbolic, IntegralConfig, IntegralResult, QPowerIntegrand};
use crate::padic::{PadicContext, PadicInt};
use crate::qgenocchi::{
    classical_genocchi, classical_genocchi_poly, gbar_padic, gbar_symbolic, qgenocchi_addition_terms,
    qgenocchi_distribution_terms, qgenocchi_integral, qgenocchi_poly, QGenocchiParams,
};
use crate::regime::{Regime, Value};

pub use report::{DiffValuation, IdentityId, Mode, VerifyReport};
pub use suite::{run_suite, Manifest, ManifestEntry, PointOutcome, SuiteReport, SummaryRow};

/// Slack and integral limits shared by every p-adic check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionConfig {
    /// Digits conceded to cancellation: checks require `v(LHS - RHS) >= K - slack`.
    pub slack: u32,
    /// Riemann-sum levels allowed beyond `K`.
    pub max_level_extra: u32,
    /// Partitions per Riemann sum; 0 means one per rayon thread.
    pub workers: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { slack: 2, max_level_extra: 2, workers: 0 }
    }
}

impl PrecisionConfig {
    fn integral(&self, k: u32) -> IntegralConfig {
        IntegralConfig { target_valuation: k, max_level: k + self.max_level_extra, workers: self.workers }
    }
}

/// Default `p`, `K` and `q` for p-adic checks.
pub const DEFAULT_PADIC: [(&str, &str); 3] = [("p", "5"), ("K", "6"), ("q", "1+p")];

/// Checks one identity at one parameter point.
pub fn verify_identity(
    id: IdentityId,
    params: &BTreeMap<String, String>,
    cfg: &PrecisionConfig,
) -> Result<VerifyReport> {
    verify_identity_with(id, params, cfg, false)
}

/// Like [`verify_identity`]; with `mutate` the sign of one right-hand term is
/// flipped before comparing, which a sound check must reject.
pub fn verify_identity_with(
    id: IdentityId,
    params: &BTreeMap<String, String>,
    cfg: &PrecisionConfig,
    mutate: bool,
) -> Result<VerifyReport> {
    let mut params = params.clone();
    if is_padic(id, &params) {
        for (k, v) in DEFAULT_PADIC {
            params.entry(k.to_string()).or_insert_with(|| v.to_string());
        }
    }
    let args = Args(&params);
    let check = match id {
        IdentityId::Eq4 => eq4(&args)?,
        IdentityId::Eq5 => eq5(&args)?,
        IdentityId::Eq1VsEq23 => eq1_vs_eq23(&args, cfg)?,
        IdentityId::Eq6 => eq6(&args, cfg)?,
        IdentityId::Eq7 => eq7(&args, cfg)?,
        IdentityId::Eq8 => eq8(&args, cfg)?,
        IdentityId::EtildeDist => etilde_dist(&args)?,
        IdentityId::EtildeInterp => etilde_interp(&args)?,
        IdentityId::Theorem1 => theorem1(&args, cfg)?,
        IdentityId::QTo1 => q_to_1(&args)?,
        IdentityId::EulerReflection => euler_reflection(&args)?,
        IdentityId::MeasureTotal => measure_total(&args)?,
        IdentityId::MeasureDist => measure_dist(&args)?,
    };
    let k = if check.lhs.is_padic() { Some(args.get::<u32>("K")?) } else { None };
    Ok(check.finish(id, params, k, cfg.slack, mutate))
}

fn is_padic(id: IdentityId, params: &BTreeMap<String, String>) -> bool {
    match id {
        IdentityId::Eq4 | IdentityId::Eq5 => params.get("regime").is_some_and(|r| r == "padic"),
        IdentityId::QTo1 | IdentityId::EulerReflection | IdentityId::MeasureTotal => false,
        _ => true,
    }
}

// ---------------------------------------------------------------------------
// Parameters

struct Args<'a>(&'a BTreeMap<String, String>);

impl Args<'_> {
    fn raw(&self, key: &str) -> Result<&str> {
        self.0.get(key).map(String::as_str).ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let s = self.raw(key)?;
        s.trim().parse().map_err(|_| Error::Parse(format!("invalid {key} = {s:?}")))
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        if self.0.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    fn rational(&self, key: &str) -> Result<Option<BigRational>> {
        self.0.get(key).map(|s| parse_rational(s)).transpose()
    }

    fn ctx(&self) -> Result<PadicContext> {
        PadicContext::parse_q(self.get("p")?, self.get("K")?, self.raw("q")?)
    }

    fn regime_is_padic(&self) -> Result<bool> {
        match self.0.get("regime").map(String::as_str) {
            None | Some("symbolic") => Ok(false),
            Some("padic") => Ok(true),
            Some(r) => Err(Error::Parse(format!("unknown regime {r:?}"))),
        }
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Quantities and the comparison

#[derive(Clone, Debug)]
enum Quantity {
    Rational(BigRational),
    Poly(Poly),
    Func(RatFunc),
    Padic(PadicInt),
}

impl Quantity {
    fn from_value(v: Value) -> Quantity {
        match v {
            Value::Symbolic(f) => Quantity::Func(f),
            Value::Padic(z) => Quantity::Padic(z),
        }
    }

    fn is_padic(&self) -> bool {
        matches!(self, Quantity::Padic(_))
    }

    fn neg(&self) -> Quantity {
        match self {
            Quantity::Rational(r) => Quantity::Rational(-r),
            Quantity::Poly(p) => Quantity::Poly(p.scale(&rat(-1))),
            Quantity::Func(f) => Quantity::Func(-f),
            Quantity::Padic(z) => Quantity::Padic(-*z),
        }
    }

    fn add(&self, o: &Quantity) -> Quantity {
        match (self, o) {
            (Quantity::Rational(a), Quantity::Rational(b)) => Quantity::Rational(a + b),
            (Quantity::Poly(a), Quantity::Poly(b)) => Quantity::Poly(a.clone() + b.clone()),
            (Quantity::Func(a), Quantity::Func(b)) => Quantity::Func(a + b),
            (Quantity::Padic(a), Quantity::Padic(b)) => Quantity::Padic(*a + *b),
            _ => unreachable!("checks never mix quantity kinds"),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Quantity::Rational(r) => r.is_zero(),
            Quantity::Poly(p) => p.is_zero(),
            Quantity::Func(f) => f.is_zero(),
            Quantity::Padic(z) => z.is_zero(),
        }
    }

    /// Ordering key for choosing the mutated term.
    fn weight(&self) -> u32 {
        match self {
            Quantity::Padic(z) => z.valuation(),
            _ => 0,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Quantity::Rational(r) => serde_json::Value::String(rational_to_string(r)),
            Quantity::Poly(p) => {
                serde_json::Value::Array(p.coeffs().iter().map(|c| rational_to_string(c).into()).collect())
            }
            Quantity::Func(f) => serde_json::to_value(f).expect("rational functions serialize"),
            Quantity::Padic(z) => serde_json::to_value(z).expect("p-adic integers serialize"),
        }
    }
}

struct Check {
    lhs: Quantity,
    rhs: Vec<Quantity>,
    side_condition: Option<String>,
    reading: Option<String>,
    history: Option<Vec<u32>>,
    /// Overrides `K - slack` when the identity holds exactly at level `K`.
    required: Option<u32>,
    /// Additional pass condition beyond the congruence.
    extra_ok: bool,
}

impl Check {
    fn new(lhs: Quantity, rhs: Vec<Quantity>) -> Check {
        Check { lhs, rhs, side_condition: None, reading: None, history: None, required: None, extra_ok: true }
    }

    fn side(mut self, s: impl Into<String>) -> Check {
        self.side_condition = Some(s.into());
        self
    }

    fn interpreted(mut self) -> Check {
        self.reading = Some("as-interpreted".into());
        self
    }

    fn finish(
        mut self,
        id: IdentityId,
        parameters: BTreeMap<String, String>,
        k: Option<u32>,
        slack: u32,
        mutate: bool,
    ) -> VerifyReport {
        if mutate {
            let pick = self
                .rhs
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .min_by_key(|(i, t)| (t.weight(), *i))
                .map(|(i, _)| i);
            if let Some(i) = pick {
                self.rhs[i] = self.rhs[i].neg();
            }
        }
        let rhs = self.rhs.iter().skip(1).fold(self.rhs[0].clone(), |acc, t| acc.add(t));
        let diff = self.lhs.add(&rhs.neg());
        let (mode, dv, ok) = match (&diff, k) {
            (Quantity::Padic(z), Some(k)) => {
                let v = z.valuation();
                let need = self.required.unwrap_or(k.saturating_sub(slack));
                (Mode::PadicCongruence, DiffValuation::Valuation(v), v >= need)
            }
            _ if diff.is_zero() => (Mode::SymbolicExact, DiffValuation::Exact, true),
            _ => (Mode::SymbolicExact, DiffValuation::Unequal, false),
        };
        VerifyReport {
            identity_id: id,
            parameters,
            mode,
            lhs: self.lhs.to_json(),
            rhs: rhs.to_json(),
            difference_valuation: dv,
            pass: ok && self.extra_ok,
            side_condition: self.side_condition,
            reading: self.reading,
            level_history: self.history,
            mutated: mutate,
        }
    }
}

/// Keeps the best approximant when an integral misses its target; the
/// congruence check then measures the shortfall.
fn integral_or_best(r: Result<IntegralResult>) -> Result<IntegralResult> {
    match r {
        Err(Error::PrecisionNotReached { best, .. }) => Ok(*best),
        other => other,
    }
}

/// History of the least converged integral among `rs`.
fn worst_history<'a>(rs: impl IntoIterator<Item = &'a IntegralResult>) -> Vec<u32> {
    rs.into_iter().min_by_key(|r| r.achieved_valuation).map(|r| r.history.clone()).unwrap_or_default()
}

fn values(vs: Vec<Value>) -> Vec<Quantity> {
    vs.into_iter().map(Quantity::from_value).collect()
}

// ---------------------------------------------------------------------------
// Genocchi identities

fn genocchi_params(a: &Args) -> Result<QGenocchiParams> {
    let n = a.get("n")?;
    let alpha = a.get("alpha")?;
    Ok(match a.rational("x")? {
        Some(x) => QGenocchiParams::poly(n, alpha, x),
        None => QGenocchiParams::number(n, alpha),
    })
}

fn with_regime<T>(a: &Args, f: impl FnOnce(Regime) -> Result<T>) -> Result<T> {
    if a.regime_is_padic()? {
        let ctx = a.ctx()?;
        f(Regime::Padic(&ctx))
    } else {
        f(Regime::Symbolic)
    }
}

fn eq4(a: &Args) -> Result<Check> {
    let gp = genocchi_params(a)?;
    with_regime(a, |r| {
        let lhs = Quantity::from_value(qgenocchi_poly(&gp, r)?);
        let rhs = values(qgenocchi_addition_terms(&gp, r)?);
        Ok(Check::new(lhs, rhs).interpreted())
    })
}

fn eq5(a: &Args) -> Result<Check> {
    let gp = genocchi_params(a)?;
    let d: u32 = a.get("d")?;
    if d.is_multiple_of(2) {
        return Err(hypothesis("d must be odd"));
    }
    let x = gp.x.clone().unwrap_or_else(BigRational::zero);
    let dx = QGenocchiParams::poly(gp.n, gp.alpha, x * rat(d as i64));
    with_regime(a, |r| {
        let lhs = Quantity::from_value(qgenocchi_poly(&dx, r)?);
        let rhs = values(qgenocchi_distribution_terms(&gp, d, r)?);
        Ok(Check::new(lhs, rhs))
    })
}

fn eq1_vs_eq23(a: &Args, cfg: &PrecisionConfig) -> Result<Check> {
    let gp = genocchi_params(a)?;
    let ctx = a.ctx()?;
    let r = integral_or_best(qgenocchi_integral(&gp, &ctx, &cfg.integral(ctx.precision())))?;
    let x = gp.x.clone().unwrap_or_else(BigRational::zero);
    let rhs = gbar_padic(gp.n, gp.alpha, &x, &ctx)?;
    let tail = &r.history[r.history.len().saturating_sub(3)..];
    let mut c = Check::new(Quantity::Padic(r.value), vec![Quantity::Padic(rhs)]);
    c.extra_ok = tail.windows(2).all(|w| w[0] <= w[1]);
    c.history = Some(r.history);
    Ok(c)
}

fn q_to_1(a: &Args) -> Result<Check> {
    let gp = genocchi_params(a)?;
    let x = gp.x.clone().unwrap_or_else(BigRational::zero);
    let lhs = gbar_symbolic(gp.n, gp.alpha, &x).eval_at_q_one()?;
    let rhs = match &gp.x {
        Some(x) => classical_genocchi_poly(gp.n).eval(x),
        None => classical_genocchi(gp.n),
    };
    Ok(Check::new(Quantity::Rational(lhs), vec![Quantity::Rational(rhs)]))
}

// ---------------------------------------------------------------------------
// Euler layer and measure

/// `f(x + 1)` by Horner's rule.
fn shift_by_one(f: &Poly) -> Poly {
    let x1 = Poly::from_ints(&[1, 1]);
    f.coeffs().iter().rev().fold(Poly::zero(), |acc, c| acc * x1.clone() + Poly::constant(c.clone()))
}

fn euler_reflection(a: &Args) -> Result<Check> {
    let m: u32 = a.get("m")?;
    Ok(match a.rational("x")? {
        None => {
            let e = euler_polynomial(m);
            let lhs = shift_by_one(&e) + e;
            let rhs = Poly::monomial(rat(2), m as usize);
            Check::new(Quantity::Poly(lhs), vec![Quantity::Poly(rhs)])
        }
        Some(x) => {
            let lhs = periodic_euler(m, &(&x + BigRational::one()));
            let rhs = -periodic_euler(m, &x);
            Check::new(Quantity::Rational(lhs), vec![Quantity::Rational(rhs)]).side("antiperiodic")
        }
    })
}

fn measure_total(a: &Args) -> Result<Check> {
    let p: u64 = a.get("p")?;
    let n: u32 = a.get("n")?;
    let bound = p.checked_pow(n).ok_or(Error::PrecisionTooLarge { p, k: n })?;
    let lhs = (0..bound).map(|i| mu_q_symbolic(i, n, p)).sum::<Result<RatFunc>>()?;
    Ok(Check::new(Quantity::Func(lhs), vec![Quantity::Func(RatFunc::one())]))
}

fn measure_dist(a: &Args) -> Result<Check> {
    let ctx = a.ctx()?;
    let n: u32 = a.get("n")?;
    let i: u64 = a.get("a")?;
    let p = ctx.p();
    let pn = p.checked_pow(n).ok_or(Error::PrecisionTooLarge { p, k: n })?;
    if i >= pn {
        return Err(hypothesis("a must be below p^n"));
    }
    let lhs = mu_q(i, n, &ctx)?;
    let rhs = (0..p).map(|j| mu_q(i + j * pn, n + 1, &ctx).map(Quantity::Padic)).collect::<Result<_>>()?;
    let mut c = Check::new(Quantity::Padic(lhs), rhs);
    c.required = Some(ctx.precision());
    Ok(c)
}

// ---------------------------------------------------------------------------
// DC sums and the interpolation function

struct DcArgs {
    ctx: PadicContext,
    m: u32,
    h: u64,
    k: u64,
    alpha: u32,
}

fn dc_args(a: &Args) -> Result<DcArgs> {
    let d = DcArgs { ctx: a.ctx()?, m: a.get("m")?, h: a.get("h")?, k: a.get("k")?, alpha: a.get_or("alpha", 1)? };
    if d.k == 0 || d.alpha == 0 {
        return Err(hypothesis("k and alpha must be positive"));
    }
    if d.h.gcd(&d.k) != 1 {
        return Err(hypothesis("gcd(h, k) must be 1"));
    }
    Ok(d)
}

fn require_m_congruence(m: u32, p: u64) -> Result<()> {
    if !(m as u64 + 1).is_multiple_of(p - 1) {
        return Err(hypothesis("m + 1 must be divisible by p - 1"));
    }
    Ok(())
}

/// Every `(hM)_k`, `M = 1..k-1`, must be a p-adic unit.
fn require_unit_residues(d: &DcArgs) -> Result<()> {
    let p = d.ctx.p();
    for mm in 1..d.k {
        let r = mod_representative((d.h * mm) as i64, d.k)?;
        if r % p == 0 {
            return Err(hypothesis(format!("p divides (hM)_k = {r} at M = {mm}")));
        }
    }
    Ok(())
}

fn eq6(a: &Args, cfg: &PrecisionConfig) -> Result<Check> {
    let d = dc_args(a)?;
    let ctx = &d.ctx;
    let p = ctx.p();
    require_m_congruence(d.m, p)?;
    require_unit_residues(&d)?;
    let side = if d.k % p == 0 { "p | k, (hM, p) = 1" } else { "p ∤ k" };
    let params = DCSumParams { h: d.h, k: d.k, m: d.m, alpha: d.alpha, l: d.k };
    let r = q_dc_sum_scaled(&params, ctx, &cfg.integral(ctx.precision()))?;
    let mut rhs = Vec::new();
    for mm in 1..d.k {
        let res = mod_representative((d.h * mm) as i64, d.k)?;
        let t = ctx.q_int(mm as i64, d.alpha as u64)? * etilde_int(d.m, res, d.k, d.alpha, ctx)?;
        rhs.push(Quantity::Padic(if mm % 2 == 1 { t } else { -t }));
    }
    if rhs.is_empty() {
        rhs.push(Quantity::Padic(ctx.zero()));
    }
    let mut c = Check::new(Quantity::Padic(r.value), rhs).side(side);
    c.history = Some(r.history);
    Ok(c)
}

fn eq7(a: &Args, cfg: &PrecisionConfig) -> Result<Check> {
    let d = dc_args(a)?;
    let ctx = &d.ctx;
    let dd = d.k;
    if dd % 2 == 0 {
        return Err(hypothesis("splitting modulus d' must be odd"));
    }
    if dd % ctx.p() == 0 {
        return Err(hypothesis("p must not divide the splitting modulus d'"));
    }
    let x = BigRational::new(BigInt::from(d.h), BigInt::from(dd));
    let al = d.alpha as u64;
    let lhs = bracket_moment(d.m, &x, 1, d.alpha, ctx)?;
    let q = ctx.q();
    let pref = ctx.q_int(dd as i64, al)?.pow(d.m as u64) * (ctx.one() + q) * (ctx.one() + q.pow(dd)).inv()?;
    let base = ctx.shifted(dd);
    let icfg = cfg.integral(ctx.precision());
    let mut rhs = Vec::new();
    let mut ints = Vec::new();
    for i in 0..dd {
        // [xi + (x+i)/d']_{q^(alpha d')} = (1 - q^(alpha (x+i) + alpha d' xi)) / (1 - q^(alpha d'))
        let shift = (&x + rat(i as i64)) * rat(al as i64);
        let f = QPowerIntegrand::new(ctx, al * dd, al * dd, &shift, d.m)?;
        let r = integral_or_best(fermionic_integral(&f, &base, &icfg))?;
        rhs.push(Quantity::Padic(pref * (-q).pow(i) * r.value));
        ints.push(r);
    }
    let mut c = Check::new(Quantity::Padic(lhs), rhs).interpreted();
    c.history = Some(worst_history(&ints));
    Ok(c)
}

fn eq8(a: &Args, cfg: &PrecisionConfig) -> Result<Check> {
    let d = dc_args(a)?;
    let ctx = &d.ctx;
    let (p, n) = (ctx.p(), d.k);
    let side = if n % p == 0 { "p | N" } else { "p ∤ N" };
    let av = rat(d.h as i64);
    let lhs = bracket_moment(d.m, &av, n, d.alpha, ctx)?;
    let qn = ctx.q().pow(n);
    let pref = (ctx.one() + qn) * (ctx.one() + qn.pow(p)).inv()?;
    let icfg = cfg.integral(ctx.precision());
    let mut rhs = Vec::new();
    let mut ints = Vec::new();
    for i in 0..p {
        let c = &av + rat((i * n) as i64);
        let r = bracket_integral(d.m, &c, p * n, d.alpha, ctx, &icfg)?;
        rhs.push(Quantity::Padic(pref * (-qn).pow(i) * r.value));
        ints.push(r);
    }
    let mut c = Check::new(Quantity::Padic(lhs), rhs).side(side).interpreted();
    c.history = Some(worst_history(&ints));
    Ok(c)
}

fn etilde_dist(a: &Args) -> Result<Check> {
    let d = dc_args(a)?;
    let ctx = &d.ctx;
    let p = ctx.p();
    let n = p * d.k;
    let ai = d.h;
    if ai % p == 0 {
        return Err(hypothesis("p must not divide a"));
    }
    let s = ctx.int(d.m as i64);
    let lhs = etilde_padic(&s, ai, n, d.alpha, ctx)?;
    let qn = ctx.q().pow(n);
    let pref = (ctx.one() + qn) * (ctx.one() + qn.pow(p)).inv()?;
    let mut rhs = Vec::new();
    for i in 0..p {
        let b = ai + i * n;
        if b % p == 0 {
            continue;
        }
        let r = mod_representative(b as i64, p * n)?;
        let t = etilde_padic(&s, r, p * n, d.alpha, ctx)?;
        rhs.push(Quantity::Padic(pref * (-qn).pow(i) * t));
    }
    Ok(Check::new(Quantity::Padic(lhs), rhs).side("p | N").interpreted())
}

fn etilde_interp(a: &Args) -> Result<Check> {
    let ctx = a.ctx()?;
    let p = ctx.p();
    let m: u32 = a.get("m")?;
    let ai: u64 = a.get("a")?;
    let n: u64 = a.get("N")?;
    let alpha: u32 = a.get_or("alpha", 1)?;
    require_m_congruence(m, p)?;
    if n == 0 || !n.is_multiple_of(p) {
        return Err(hypothesis("p must divide N"));
    }
    if ai.is_multiple_of(p) {
        return Err(hypothesis("p must not divide a"));
    }
    let s = ctx.int(m as i64);
    let lhs = etilde_padic(&s, ai, n, alpha, &ctx)?;
    let check = a.0.get("check").map(String::as_str).unwrap_or("int");
    let rhs = match check {
        "int" => etilde_int(m, ai, n, alpha, &ctx)?,
        "continuity" => {
            let e: u32 = a.get_or("shift_exp", 5)?;
            let step = PadicInt::from_bigint(p, ctx.precision(), &BigInt::from(p).pow(e))?;
            etilde_padic(&(s + step), ai, n, alpha, &ctx)?
        }
        other => return Err(Error::Parse(format!("unknown check {other:?}"))),
    };
    Ok(Check::new(Quantity::Padic(lhs), vec![Quantity::Padic(rhs)]).side(check.to_string()))
}

fn theorem1(a: &Args, cfg: &PrecisionConfig) -> Result<Check> {
    let d = dc_args(a)?;
    let ctx = &d.ctx;
    let p = ctx.p();
    require_m_congruence(d.m, p)?;
    if d.k % p == 0 {
        return Err(hypothesis("p must not divide k"));
    }
    for mm in 1..d.k {
        if (d.h * mm) % p == 0 {
            return Err(hypothesis(format!("p divides hM = {} at M = {mm}", d.h * mm)));
        }
    }
    require_unit_residues(&d)?;
    let params = DCSumParams { h: d.h, k: d.k, m: d.m, alpha: d.alpha, l: d.k };
    let lhs = padic_dc_sum(&EtildeS::Int(d.m as u64), &params, ctx)?;
    let icfg = cfg.integral(ctx.precision());
    let first = q_dc_sum_scaled(&params, ctx, &icfg)?;
    let hp = mod_representative_p_inverse(p, d.h as i64, d.k)?;
    let second = q_dc_sum_scaled(&DCSumParams { h: hp, l: p * d.k, ..params }, ctx, &icfg)?;
    let ratio = ctx.q_int(p as i64, d.alpha as u64 * d.k)?;
    let rhs = vec![Quantity::Padic(first.value), Quantity::Padic(-(ratio * second.value))];
    let mut c = Check::new(Quantity::Padic(lhs), rhs).side("p ∤ k");
    c.history = Some(worst_history([&first, &second]));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    fn run(id: IdentityId, kv: &[(&str, &str)]) -> VerifyReport {
        verify_identity(id, &params(kv), &PrecisionConfig::default()).unwrap()
    }

    #[test]
    fn eq5_example_passes_exactly() {
        let r = run(IdentityId::Eq5, &[("d", "3"), ("n", "4"), ("alpha", "1"), ("x", "1/2")]);
        assert!(r.pass);
        assert_eq!(r.mode, Mode::SymbolicExact);
        assert_eq!(r.difference_valuation, DiffValuation::Exact);
    }

    #[test]
    fn eq5_even_d_is_rejected() {
        let e = verify_identity(
            IdentityId::Eq5,
            &params(&[("d", "2"), ("n", "4"), ("alpha", "1"), ("x", "1/2")]),
            &PrecisionConfig::default(),
        )
        .unwrap_err();
        assert_eq!(e, Error::HypothesisViolation("d must be odd".into()));
    }

    #[test]
    fn eq4_mutation_is_detected() {
        let kv = params(&[("n", "3"), ("alpha", "2"), ("x", "1/3")]);
        let cfg = PrecisionConfig::default();
        assert!(verify_identity(IdentityId::Eq4, &kv, &cfg).unwrap().pass);
        let m = verify_identity_with(IdentityId::Eq4, &kv, &cfg, true).unwrap();
        assert!(!m.pass);
        assert!(m.mutated);
    }

    #[test]
    fn padic_defaults_are_recorded() {
        let r = run(IdentityId::MeasureDist, &[("n", "1"), ("a", "2")]);
        assert_eq!(r.parameters["p"], "5");
        assert_eq!(r.parameters["K"], "6");
        assert_eq!(r.parameters["q"], "1+p");
        assert!(r.pass);
        assert_eq!(r.difference_valuation, DiffValuation::Valuation(6));
    }

    #[test]
    fn report_roundtrips_through_json() {
        let r = run(IdentityId::Eq6, &[("m", "3"), ("h", "1"), ("k", "3")]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerifyReport>(&s).unwrap(), r);
        assert!(s.contains("\"identity_id\":\"eq6\""));
        assert!(s.contains("\"mode\":\"padic-congruence\""));
    }

    #[test]
    fn reports_are_reproducible() {
        let kv = [("m", "3"), ("h", "1"), ("k", "4")];
        assert_eq!(run(IdentityId::Eq8, &kv), run(IdentityId::Eq8, &kv));
    }

    #[test]
    fn euler_reflection_forms() {
        assert!(run(IdentityId::EulerReflection, &[("m", "7")]).pass);
        assert!(run(IdentityId::EulerReflection, &[("m", "4"), ("x", "-5/3")]).pass);
    }
}

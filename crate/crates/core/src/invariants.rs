//! Randomized automatic degeneracies and the scalar invariants around them.
//!
//! A trial draws jet elements, builds the degeneracy matrix against a dual
//! basis, and takes the colength of its maximal minors (plus the germ for
//! weight 1). The reported value is the minimum over trials; how many trials
//! hit that minimum is kept as `agreement`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{ad_bounds, binom, delta_binomial, to_integer};
use crate::colength::{ideal_colength, ideal_colength_with, ColengthOptions, ColengthReport};
use crate::error::{AdegError, Result};
use crate::field::PrimeField;
use crate::jets::{degeneracy_matrix, maximal_minors, random_jet_elements, Constraint, GermPattern, GermSpec, JetElement};
use crate::poly::{TruncatedPoly, Var};
use crate::strategy::{BasisStrategy, StrategyRegistry, EXPLICIT_SMALL, NODE, ZERO_SPECIALIZED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegeneracyKind {
    /// Weight 1: m elements, germ adjoined.
    W1,
    /// Weight 2, type (a): m - 1 elements.
    W2A,
    /// Weight 2, type (b): m + 1 elements.
    W2B,
}

impl DegeneracyKind {
    pub const ALL: [DegeneracyKind; 3] = [DegeneracyKind::W1, DegeneracyKind::W2A, DegeneracyKind::W2B];

    pub fn elements(self, m: usize) -> usize {
        match self {
            DegeneracyKind::W1 => m,
            DegeneracyKind::W2A => m.saturating_sub(1),
            DegeneracyKind::W2B => m + 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DegeneracyKind::W1 => "w1",
            DegeneracyKind::W2A => "w2a",
            DegeneracyKind::W2B => "w2b",
        }
    }
}

impl fmt::Display for DegeneracyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DegeneracyKind {
    type Err = AdegError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w1" | "1" => Ok(DegeneracyKind::W1),
            "w2a" | "2" => Ok(DegeneracyKind::W2A),
            "w2b" | "1,1" | "11" => Ok(DegeneracyKind::W2B),
            _ => Err(AdegError::Usage(format!("unknown kind '{s}' (expected w1, w2a or w2b)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub field: PrimeField,
    pub trials: usize,
    pub units: usize,
    pub seed: u64,
    /// None picks max(2m, 8).
    pub start_n: Option<u32>,
    pub max_n: u32,
    /// Registered basis name; None picks one from the germ and order.
    pub basis: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: PrimeField::default(),
            trials: 5,
            units: 2,
            seed: 1,
            start_n: None,
            max_n: 64,
            basis: None,
        }
    }
}

impl RunConfig {
    pub fn colength_options(&self, m: usize) -> ColengthOptions {
        let auto = ColengthOptions::for_order(m, self.max_n);
        match self.start_n {
            Some(n) => ColengthOptions { start_n: n.min(self.max_n), max_n: self.max_n },
            None => auto,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(AdegError::Usage("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub germ: GermSpec,
    pub order: usize,
    pub kind: DegeneracyKind,
    pub basis: &'static str,
    /// Stable trial reports, in draw order.
    pub trials: Vec<ColengthReport>,
    /// Trials whose colength never stabilized.
    pub diverged: usize,
    pub value: u64,
    pub agreement: usize,
    pub unit_checked: bool,
}

impl DegeneracyResult {
    pub fn attempts(&self) -> usize {
        self.trials.len() + self.diverged
    }

    /// Truncation order that certified the minimum.
    pub fn truncation(&self) -> u32 {
        self.trials.iter().find(|r| r.value == self.value).map_or(0, |r| r.truncation_used)
    }
}

fn registry() -> &'static StrategyRegistry {
    static REGISTRY: OnceLock<StrategyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(StrategyRegistry::with_defaults)
}

/// Independent stream seed for a (unit, trial) slot.
pub fn stream_seed(seed: u64, unit: u64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(seed) ^ unit) ^ trial)
}

/// The strategy named in the config, or the default for this germ and order.
pub fn select_strategy(germ: &GermSpec, m: usize, cfg: &RunConfig) -> Result<&'static dyn BasisStrategy> {
    let reg = registry();
    let s = match &cfg.basis {
        Some(name) => reg.get(name)?,
        None if m <= 4 => reg.get(EXPLICIT_SMALL)?,
        None if germ.pattern() == GermPattern::Node => reg.get(NODE)?,
        None => {
            return Err(AdegError::Unsupported(format!(
                "order {m} > 4 is only available for the node xy"
            )))
        }
    };
    s.check(&germ.to_poly(cfg.field), m)?;
    Ok(s)
}

/// One colength computation for fixed elements.
pub fn degeneracy_trial(
    strategy: &dyn BasisStrategy,
    f: &TruncatedPoly,
    m: usize,
    kind: DegeneracyKind,
    elems: &[JetElement],
    opts: ColengthOptions,
) -> Result<ColengthReport> {
    if elems.is_empty() {
        return Err(AdegError::Usage(format!("{kind} at order {m} has no jet elements")));
    }
    ideal_colength_with(
        |n| {
            let basis = strategy.build(f, m, n)?;
            let mut gens = maximal_minors(&degeneracy_matrix(&basis, elems)?)?;
            if kind == DegeneracyKind::W1 {
                gens.push(f.with_truncation(n));
            }
            Ok(gens)
        },
        opts,
    )
}

fn run_trials(
    germ: &GermSpec,
    f: &TruncatedPoly,
    m: usize,
    kind: DegeneracyKind,
    strategy: &'static dyn BasisStrategy,
    constraint: Constraint,
    cfg: &RunConfig,
    unit: u64,
) -> Result<DegeneracyResult> {
    cfg.validate()?;
    cfg.field.check_order(m)?;
    let count = kind.elements(m);
    if count == 0 {
        return Err(AdegError::Usage(format!("{kind} needs order at least 2")));
    }
    let opts = cfg.colength_options(m);
    let mut trials = Vec::with_capacity(cfg.trials);
    let mut diverged = 0;
    for t in 0..cfg.trials {
        let seed = stream_seed(cfg.seed, unit, t as u64);
        let elems = random_jet_elements(m, count, constraint, strategy.element_mode(), cfg.field, seed);
        match degeneracy_trial(strategy, f, m, kind, &elems, opts) {
            Ok(r) => trials.push(r),
            Err(AdegError::ColengthDiverged { .. }) => diverged += 1,
            Err(e) => return Err(e),
        }
    }
    let value = trials
        .iter()
        .map(|r| r.value)
        .min()
        .ok_or(AdegError::DegenerateDraws { trials: cfg.trials })?;
    let agreement = trials.iter().filter(|r| r.value == value).count();
    Ok(DegeneracyResult {
        germ: germ.clone(),
        order: m,
        kind,
        basis: strategy.name(),
        trials,
        diverged,
        value,
        agreement,
        unit_checked: false,
    })
}

/// Minimum colength over random draws for the germ itself.
pub fn sd_value(germ: &GermSpec, m: usize, kind: DegeneracyKind, cfg: &RunConfig) -> Result<DegeneracyResult> {
    let strategy = select_strategy(germ, m, cfg)?;
    run_trials(germ, &germ.to_poly(cfg.field), m, kind, strategy, Constraint::None, cfg, 0)
}

/// A random unit: nonzero constant plus a random tail of degree 1 and 2.
pub fn random_unit(field: PrimeField, seed: u64) -> TruncatedPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    let mut terms = vec![((0, 0), rng.gen_range(1..p))];
    for e in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        terms.push((e, rng.gen_range(0..p)));
    }
    TruncatedPoly::exact(field, terms)
}

fn times_unit(u: &TruncatedPoly, f: &TruncatedPoly) -> Result<TruncatedPoly> {
    let n = f.degree().unwrap_or(0) + 4;
    let prod = u.with_truncation(n).mul_truncated(&f.with_truncation(n))?;
    Ok(TruncatedPoly::exact(f.field(), prod.terms()))
}

/// SD of u*f for several random units u; all must agree.
pub fn ad_value(germ: &GermSpec, m: usize, kind: DegeneracyKind, cfg: &RunConfig) -> Result<DegeneracyResult> {
    let strategy = select_strategy(germ, m, cfg)?;
    if strategy.name() == NODE {
        // The node basis is tied to xy itself, so there is no unit to vary.
        return sd_value(germ, m, kind, cfg);
    }
    if cfg.units == 0 {
        return Err(AdegError::Usage("units must be at least 1".into()));
    }
    let f = germ.to_poly(cfg.field);
    let mut merged: Option<DegeneracyResult> = None;
    let mut values = Vec::with_capacity(cfg.units);
    for k in 1..=cfg.units as u64 {
        let u = random_unit(cfg.field, stream_seed(cfg.seed, k, u64::MAX));
        let uf = times_unit(&u, &f)?;
        let r = run_trials(germ, &uf, m, kind, strategy, Constraint::None, cfg, k)?;
        values.push(r.value);
        merged = Some(match merged {
            None => r,
            Some(mut acc) => {
                acc.trials.extend(r.trials);
                acc.diverged += r.diverged;
                acc
            }
        });
    }
    if values.iter().any(|v| *v != values[0]) {
        return Err(AdegError::UnitDependence { values });
    }
    let mut out = merged.expect("units >= 1");
    out.agreement = out.trials.iter().filter(|r| r.value == out.value).count();
    out.unit_checked = true;
    Ok(out)
}

/// Node degeneracies through the u,v basis, any order.
pub fn node_ad(m: usize, kind: DegeneracyKind, cfg: &RunConfig) -> Result<DegeneracyResult> {
    let node = GermSpec::node();
    let strategy = registry().get(NODE)?;
    run_trials(&node, &node.to_poly(cfg.field), m, kind, strategy, Constraint::None, cfg, 0)
}

/// Node weight-2 type (a) colength with one branch flexed by the first element.
pub fn flecnode_colength(m: usize, cfg: &RunConfig) -> Result<DegeneracyResult> {
    if m < 3 {
        return Err(AdegError::Usage("flecnode needs order at least 3".into()));
    }
    let node = GermSpec::node();
    let strategy = registry().get(NODE)?;
    run_trials(&node, &node.to_poly(cfg.field), m, DegeneracyKind::W2A, strategy, Constraint::Flecnode, cfg, 0)
}

/// Colength against the zero-specialized functionals.
pub fn zero_specialized_length(
    germ: &GermSpec,
    m: usize,
    kind: DegeneracyKind,
    cfg: &RunConfig,
) -> Result<DegeneracyResult> {
    if m < 2 {
        return Err(AdegError::Usage("zero-specialized length needs order at least 2".into()));
    }
    let strategy = registry().get(ZERO_SPECIALIZED)?;
    run_trials(germ, &germ.to_poly(cfg.field), m, kind, strategy, Constraint::None, cfg, 0)
}

/// Colength of the Jacobian ideal.
pub fn milnor_number(germ: &GermSpec, cfg: &RunConfig) -> Result<u64> {
    let f = germ.to_poly(cfg.field);
    let gens = [f.partial_derivative(Var::X), f.partial_derivative(Var::Y)];
    if gens.iter().all(|g| g.is_zero()) {
        return Err(AdegError::NotIsolated);
    }
    let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let opts = ColengthOptions { start_n: 8.min(cfg.max_n), max_n: cfg.max_n };
    match ideal_colength(&gens, opts) {
        Ok(r) => Ok(r.value),
        Err(AdegError::ColengthDiverged { .. }) => Err(AdegError::NotIsolated),
        Err(e) => Err(e),
    }
}

/// Colength of (f, alpha f_x - beta f_y) for random nonzero alpha, beta.
pub fn hilbert_samuel(germ: &GermSpec, cfg: &RunConfig) -> Result<u64> {
    let field = cfg.field;
    let f = germ.to_poly(field);
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, u64::MAX, 0));
    let p = field.modulus();
    let (alpha, beta) = (rng.gen_range(1..p), rng.gen_range(1..p));
    let polar = &f.partial_derivative(Var::X).scale(alpha) - &f.partial_derivative(Var::Y).scale(beta);
    let opts = ColengthOptions { start_n: 8.min(cfg.max_n), max_n: cfg.max_n };
    Ok(ideal_colength(&[f, polar], opts)?.value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub milnor: u64,
    pub delta: Option<u64>,
    pub hilbert_samuel: u64,
    pub discriminant_mult: u64,
    pub branches: Option<u64>,
}

/// (delta, branches) where the germ shape makes them computable.
pub fn delta_and_branches(germ: &GermSpec) -> Option<(u64, u64)> {
    match germ.pattern() {
        GermPattern::Node => Some((1, 2)),
        GermPattern::Binomial { t, s } => {
            let (s, t) = (s as u64, t as u64);
            Some((delta_binomial(s, t), num_integer::gcd(s, t)))
        }
        GermPattern::Other => None,
    }
}

pub fn invariant_report(germ: &GermSpec, cfg: &RunConfig) -> Result<InvariantReport> {
    let milnor = milnor_number(germ, cfg)?;
    let db = delta_and_branches(germ);
    Ok(InvariantReport {
        milnor,
        delta: db.map(|d| d.0),
        hilbert_samuel: hilbert_samuel(germ, cfg)?,
        // Planar germs: the discriminant multiplicity is the Milnor number.
        discriminant_mult: milnor,
        branches: db.map(|d| d.1),
    })
}

/// AD with the discriminant contribution removed.
pub fn limiting_count(
    germ: &GermSpec,
    m: usize,
    kind: DegeneracyKind,
    cfg: &RunConfig,
) -> Result<(i64, DegeneracyResult)> {
    let ad = ad_value(germ, m, kind, cfg)?;
    let mu = BigInt::from(milnor_number(germ, cfg)?);
    let mi = m as i64;
    let excess = match kind {
        DegeneracyKind::W1 => BigInt::from(0),
        DegeneracyKind::W2A => mu * binom(mi + 1, 4),
        DegeneracyKind::W2B => mu * binom(mi + 2, 4),
    };
    let count = BigInt::from(ad.value) - excess;
    if count < BigInt::from(0) {
        return Err(AdegError::InternalInconsistency(format!(
            "negative limiting count {count} for {kind} at order {m}"
        )));
    }
    let count = i64::try_from(count).map_err(|_| AdegError::InternalInconsistency("count overflow".into()))?;
    Ok((count, ad))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsCheck {
    pub lower: Option<BigInt>,
    pub upper: Option<BigInt>,
    pub computed: u64,
    pub holds: bool,
}

impl BoundsCheck {
    pub fn require(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(AdegError::InternalInconsistency(format!(
                "{} violates bounds [{}, {}]",
                self.computed,
                self.lower.as_ref().map_or("-".into(), |v| v.to_string()),
                self.upper.as_ref().map_or("-".into(), |v| v.to_string()),
            )))
        }
    }
}

/// Lower and upper bounds around a computed value; W1 needs a known delta.
pub fn bounds_report(
    germ: &GermSpec,
    m: usize,
    kind: DegeneracyKind,
    computed: u64,
    cfg: &RunConfig,
) -> Result<BoundsCheck> {
    let mu = milnor_number(germ, cfg)?;
    let delta = delta_and_branches(germ).map(|d| d.0);
    let (lower, upper) = match ad_bounds(mu, delta, m, kind) {
        Ok((lo, hi)) => (Some(lo), hi),
        Err(AdegError::Unavailable(_)) => (None, None),
        Err(e) => return Err(e),
    };
    let upper = match upper {
        Some(u) => Some(to_integer(&u).ok_or_else(|| {
            AdegError::InternalInconsistency(format!("upper bound {u} is not an integer"))
        })?),
        None => None,
    };
    let c = BigInt::from(computed);
    let holds = lower.as_ref().map_or(true, |l| *l <= c) && upper.as_ref().map_or(true, |u| c <= *u);
    Ok(BoundsCheck { lower, upper, computed, holds })
}

//! Lazily evaluated subsets of ℕ: membership, bounded enumeration, and exact
//! modular profiles where the family admits one.

pub mod b_alpha;
pub mod basis;
pub mod d_k;
pub mod hook;
pub mod omega;
pub mod three_density;
pub mod weyl;

use serde::{Deserialize, Serialize};

use crate::arith::lcm_checked;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::periodic::{field_error, EventuallyPeriodicSet, ModularProfile, MAX_THRESHOLD};
use crate::rational::Rational;
use crate::zmod::{self, ResidueSet, MAX_MODULUS};

pub use b_alpha::DyadicUnion;
pub use basis::{refined_bound, thin_basis, BasisChain};
pub use d_k::{DigitAvoiding, DkDerived, KRule, KSequence};
pub use hook::{FactorialHook, HookRule};
pub use omega::{phi_t, FewPrimeFactors};
pub use three_density::{BlockRule, NestedResidues, SeparatedBlocks};
pub use weyl::{FractionalWindow, Theta};

/// Longest prefix `[0, H)` any description will enumerate.
pub const MAX_HORIZON: u64 = 1 << 28;

fn check_horizon(len: u64) -> Result<()> {
    if len > MAX_HORIZON {
        return Err(Error::LimitExceeded { what: "horizon", value: len as u128, limit: MAX_HORIZON as u128 });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Periodic(EventuallyPeriodicSet),
    BAlpha(DyadicUnion),
    DK(DigitAvoiding),
    /// Base-4 digits in `{0, 1}`.
    X0(DigitAvoiding),
    Weyl(FractionalWindow),
    PT(FewPrimeFactors),
    ThinBasis {
        m: u64,
        elements: Vec<u64>,
    },
    BasisChain(BasisChain),
    Hook(FactorialHook),
    ThreeDensity(Box<SeparatedBlocks>),
    Union(Vec<SetDescription>),
    Sumset(Vec<SetDescription>),
    Complement(Box<SetDescription>),
}

/// A subset of ℕ with a membership oracle and, when available, its exact
/// periodic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "serde_json::Value", into = "serde_json::Value")]
pub struct SetDescription {
    family: Family,
    periodic: Option<EventuallyPeriodicSet>,
}

impl From<EventuallyPeriodicSet> for SetDescription {
    fn from(p: EventuallyPeriodicSet) -> Self {
        SetDescription { periodic: Some(p.clone()), family: Family::Periodic(p) }
    }
}

impl SetDescription {
    pub fn new(family: Family) -> Self {
        let periodic = Self::periodic_form(&family);
        SetDescription { family, periodic }
    }

    fn periodic_form(family: &Family) -> Option<EventuallyPeriodicSet> {
        match family {
            Family::Periodic(p) => Some(p.clone()),
            Family::BAlpha(b) => Some(b.to_periodic()),
            Family::DK(d) => {
                let k = d.k();
                if !k.is_infinite() {
                    let top = k.prefix().last().map_or(0, |&x| x + 1);
                    (top <= 20).then(|| EventuallyPeriodicSet::from_residues(&d.attained(1 << top).unwrap()))
                } else if k.is_cofinite() {
                    let c = *k.prefix().last().unwrap();
                    (c <= 26).then(|| EventuallyPeriodicSet::finite(d.indicator(1 << c).ones().map(|x| x as u64)).ok()).flatten()
                } else {
                    None
                }
            }
            Family::ThinBasis { elements, .. } => EventuallyPeriodicSet::finite(elements.iter().copied()).ok(),
            Family::BasisChain(b) => {
                let last = *b.elements.last()?;
                (last < MAX_THRESHOLD as u128).then(|| EventuallyPeriodicSet::finite(b.elements.iter().map(|&e| e as u64)).ok()).flatten()
            }
            Family::Union(parts) => {
                let mut acc = EventuallyPeriodicSet::empty();
                for p in parts {
                    acc = acc.union(p.periodic.as_ref()?).ok()?;
                }
                Some(acc)
            }
            Family::Sumset(parts) => {
                let mut acc = parts.first()?.periodic.clone()?;
                for p in &parts[1..] {
                    acc = acc.sumset(p.periodic.as_ref()?).ok()?;
                }
                Some(acc)
            }
            Family::Complement(x) => x.periodic.as_ref().map(EventuallyPeriodicSet::complement),
            Family::X0(_) | Family::Weyl(_) | Family::PT(_) | Family::Hook(_) | Family::ThreeDensity(_) => None,
        }
    }

    pub fn periodic(set: EventuallyPeriodicSet) -> Self {
        set.into()
    }

    pub fn b_alpha(bits: &str) -> Result<Self> {
        Ok(Self::new(Family::BAlpha(DyadicUnion::from_bits(bits)?)))
    }

    pub fn d_k(k: KSequence) -> Self {
        Self::new(Family::DK(DigitAvoiding::new(k)))
    }

    pub fn x0() -> Self {
        Self::new(Family::X0(DigitAvoiding::base4_01()))
    }

    pub fn weyl(theta: &str, alpha: Rational) -> Result<Self> {
        Ok(Self::new(Family::Weyl(FractionalWindow::new(Theta::parse(theta)?, alpha)?)))
    }

    pub fn p_t(t: u32) -> Self {
        Self::new(Family::PT(FewPrimeFactors { t }))
    }

    pub fn thin_basis(m: u64) -> Result<Self> {
        Ok(Self::new(Family::ThinBasis { m, elements: thin_basis(m)? }))
    }

    pub fn basis_chain(moduli: &[u64], sparsify: bool) -> Result<Self> {
        Ok(Self::new(Family::BasisChain(BasisChain::new(moduli, sparsify)?)))
    }

    pub fn hook(rule: HookRule) -> Self {
        Self::new(Family::Hook(FactorialHook { rule }))
    }

    pub fn three_density(alpha: Rational, beta: Rational, gamma: Rational, theta: &str, rule: BlockRule) -> Result<Self> {
        let blocks = SeparatedBlocks::new(alpha, beta, gamma, Theta::parse(theta)?, rule)?;
        Ok(Self::new(Family::ThreeDensity(Box::new(blocks))))
    }

    pub fn union(parts: Vec<SetDescription>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("of", "a union needs at least one part"));
        }
        Ok(Self::new(Family::Union(parts)))
    }

    pub fn sumset(parts: Vec<SetDescription>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("of", "a sumset needs at least one summand"));
        }
        Ok(Self::new(Family::Sumset(parts)))
    }

    /// `X + X`.
    pub fn doubled(&self) -> Self {
        Self::new(Family::Sumset(vec![self.clone(), self.clone()]))
    }

    pub fn complement(x: SetDescription) -> Self {
        Self::new(Family::Complement(Box::new(x)))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Periodic(_) => "periodic",
            Family::BAlpha(_) => "b_alpha",
            Family::DK(_) => "d_k",
            Family::X0(_) => "x0",
            Family::Weyl(_) => "weyl",
            Family::PT(_) => "p_t",
            Family::ThinBasis { .. } => "thin_basis",
            Family::BasisChain(_) => "basis_chain",
            Family::Hook(_) => "hook",
            Family::ThreeDensity(_) => "three_density",
            Family::Union(_) => "union",
            Family::Sumset(_) => "sumset",
            Family::Complement(_) => "complement",
        }
    }

    /// The exact eventually periodic form, when the set has one.
    pub fn to_periodic(&self) -> Option<&EventuallyPeriodicSet> {
        self.periodic.as_ref()
    }

    pub fn contains(&self, n: u64) -> bool {
        if let Some(p) = &self.periodic {
            return p.contains(n);
        }
        match &self.family {
            Family::DK(d) | Family::X0(d) => d.contains(n),
            Family::Weyl(w) => w.contains(n),
            Family::PT(p) => p.contains(n),
            Family::Hook(h) => h.contains(n),
            Family::ThreeDensity(b) => b.contains(n),
            Family::BasisChain(b) => b.elements.binary_search(&(n as u128)).is_ok(),
            Family::Union(parts) => parts.iter().any(|p| p.contains(n)),
            Family::Complement(x) => !x.contains(n),
            Family::Sumset(_) => self.indicator(n + 1).map(|b| b.get(n as usize)).unwrap_or(false),
            Family::Periodic(p) => p.contains(n),
            Family::BAlpha(b) => b.contains(n),
            Family::ThinBasis { elements, .. } => elements.binary_search(&n).is_ok(),
        }
    }

    /// Membership of `[0, len)`.
    pub fn indicator(&self, len: u64) -> Result<Bits> {
        check_horizon(len)?;
        if let Some(p) = &self.periodic {
            return Ok(p.indicator(len));
        }
        let by_scan = |f: &dyn Fn(u64) -> bool| {
            let mut b = Bits::new(len as usize);
            for n in 0..len {
                if f(n) {
                    b.set(n as usize);
                }
            }
            b
        };
        Ok(match &self.family {
            Family::DK(d) | Family::X0(d) => d.indicator(len),
            Family::Weyl(w) => by_scan(&|n| w.contains(n)),
            Family::PT(p) => p.indicator(len),
            Family::Hook(h) => h.indicator(len),
            Family::ThreeDensity(b) => by_scan(&|n| b.contains(n)),
            Family::BasisChain(b) => Bits::from_indices(len as usize, b.elements.iter().take_while(|&&e| e < len as u128).map(|&e| e as usize)),
            Family::Union(parts) => {
                let mut acc = Bits::new(len as usize);
                for p in parts {
                    acc.or_assign(&p.indicator(len)?);
                }
                acc
            }
            Family::Sumset(parts) => {
                let mut acc = parts[0].indicator(len)?;
                for p in &parts[1..] {
                    acc = acc.linear_sumset(&p.indicator(len)?, len as usize);
                }
                acc
            }
            Family::Complement(x) => {
                let mut b = x.indicator(len)?;
                b.negate();
                b
            }
            Family::Periodic(p) => p.indicator(len),
            Family::BAlpha(b) => b.to_periodic().indicator(len),
            Family::ThinBasis { elements, .. } => Bits::from_indices(len as usize, elements.iter().filter(|&&e| e < len).map(|&e| e as usize)),
        })
    }

    /// Members `<= horizon`, ascending.
    pub fn members_up_to(&self, horizon: u64) -> Result<Vec<u64>> {
        Ok(self.indicator(horizon + 1)?.ones().map(|x| x as u64).collect())
    }

    fn periodic_profile(&self, m: u64) -> Option<ModularProfile> {
        if m == 0 || m > MAX_MODULUS {
            return None;
        }
        self.periodic.as_ref().and_then(|p| p.modular_profile(m).ok())
    }

    /// `X^(m)`, exact.
    pub fn attained(&self, m: u64) -> Option<ResidueSet> {
        if self.periodic.is_some() {
            return self.periodic_profile(m).map(|p| p.attained);
        }
        match &self.family {
            Family::DK(d) | Family::X0(d) => d.attained(m),
            Family::Hook(_) => ResidueSet::full(m).ok(),
            Family::Union(parts) => {
                let mut acc = ResidueSet::empty(m).ok()?;
                for p in parts {
                    acc = acc.union(&p.attained(m)?).ok()?;
                }
                Some(acc)
            }
            Family::Sumset(parts) => {
                let mut acc = parts[0].attained(m)?;
                for p in &parts[1..] {
                    acc = acc.add(&p.attained(m)?).ok()?;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// `X_∞^(m)`, exact.
    pub fn infinitely_attained(&self, m: u64) -> Option<ResidueSet> {
        if self.periodic.is_some() {
            return self.periodic_profile(m).map(|p| p.infinitely_attained);
        }
        match &self.family {
            Family::DK(d) | Family::X0(d) => d.infinitely_attained(m),
            Family::Hook(_) => ResidueSet::full(m).ok(),
            Family::Union(parts) => {
                let mut acc = ResidueSet::empty(m).ok()?;
                for p in parts {
                    acc = acc.union(&p.infinitely_attained(m)?).ok()?;
                }
                Some(acc)
            }
            Family::Sumset(parts) => {
                // a class is hit infinitely often iff some summand class is
                let mut att = parts[0].attained(m)?;
                let mut inf = parts[0].infinitely_attained(m)?;
                for p in &parts[1..] {
                    let pa = p.attained(m)?;
                    let pi = p.infinitely_attained(m)?;
                    inf = att.add(&pi).ok()?.union(&inf.add(&pa).ok()?).ok()?;
                    att = att.add(&pa).ok()?;
                }
                Some(inf)
            }
            Family::Complement(x) => Some(x.cofinitely_attained(m)?.complement()),
            _ => None,
        }
    }

    /// `X_*^(m)`, exact.
    pub fn cofinitely_attained(&self, m: u64) -> Option<ResidueSet> {
        if self.periodic.is_some() {
            return self.periodic_profile(m).map(|p| p.cofinitely_attained);
        }
        match &self.family {
            Family::DK(d) | Family::X0(d) => d.cofinitely_attained(m),
            Family::Hook(_) => ResidueSet::empty(m).ok(),
            Family::Union(parts) => union_cofinite(parts, m),
            Family::Complement(x) => Some(x.infinitely_attained(m)?.complement()),
            _ => None,
        }
    }

    pub fn profile(&self, m: u64) -> Option<ModularProfile> {
        Some(ModularProfile {
            modulus: m,
            attained: self.attained(m)?,
            infinitely_attained: self.infinitely_attained(m)?,
            cofinitely_attained: self.cofinitely_attained(m)?,
        })
    }

    /// True when `X^(m) = X_∞^(m)` for every supported `m`.
    pub fn all_attained_are_infinite(&self) -> bool {
        match &self.family {
            Family::Periodic(p) => p.threshold() == 0,
            Family::BAlpha(_) => true,
            Family::DK(d) | Family::X0(d) => !d.k().is_cofinite(),
            Family::Hook(_) => true,
            Family::Union(parts) | Family::Sumset(parts) => parts.iter().all(Self::all_attained_are_infinite),
            _ => false,
        }
    }
}

/// Classes mod `m` all of whose lifts mod `M` lie in `c`.
fn fully_covered(c: &ResidueSet, m: u64) -> Option<ResidueSet> {
    let big = c.modulus();
    let mut out = ResidueSet::empty(m).ok()?;
    for r in 0..m {
        if (0..big / m).all(|j| c.contains(r + j * m)) {
            out.insert(r).ok()?;
        }
    }
    Some(out)
}

/// `X_*^(m)` for a union with at most one part lacking a periodic form: each
/// class mod `M = lcm(q, m)` is either covered by the periodic parts
/// eventually or must be covered by the remaining part.
fn union_cofinite(parts: &[SetDescription], m: u64) -> Option<ResidueSet> {
    let (periodic, other): (Vec<_>, Vec<_>) = parts.iter().partition(|p| p.periodic.is_some());
    if other.len() > 1 {
        return None;
    }
    let mut p = EventuallyPeriodicSet::empty();
    for x in &periodic {
        p = p.union(x.periodic.as_ref()?).ok()?;
    }
    let Some(y) = other.first() else {
        return p.modular_profile(m).ok().map(|pr| pr.cofinitely_attained);
    };
    let big = lcm_checked(p.period(), m)?;
    if big > MAX_MODULUS {
        return None;
    }
    let c = p.modular_profile(big).ok()?.cofinitely_attained.union(&y.cofinitely_attained(big)?).ok()?;
    fully_covered(&c, m)
}

/// JSON schema for descriptions. On the wire the variant name sits in a
/// `"family"` field next to the variant's fields; internally the enum is
/// externally tagged so that error paths survive deserialization.
#[derive(Serialize, Deserialize)]
enum Raw {
    #[serde(rename = "periodic")]
    Periodic { set: EventuallyPeriodicSet },
    #[serde(rename = "b_alpha")]
    BAlpha {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bits: Option<String>,
        #[serde(default, with = "crate::rational::opt", skip_serializing_if = "Option::is_none")]
        alpha: Option<Rational>,
    },
    #[serde(rename = "d_k")]
    DK {
        k_prefix: Vec<u64>,
        #[serde(default = "default_k_rule")]
        rule: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gap: Option<u64>,
    },
    #[serde(rename = "x0")]
    X0 {},
    #[serde(rename = "weyl")]
    Weyl {
        theta: String,
        #[serde(with = "crate::rational")]
        alpha: Rational,
    },
    #[serde(rename = "p_t")]
    PT { t: u32 },
    #[serde(rename = "thin_basis")]
    ThinBasis { m: u64 },
    #[serde(rename = "basis_chain")]
    BasisChain {
        moduli: Vec<u64>,
        #[serde(default)]
        sparsify: bool,
    },
    #[serde(rename = "hook")]
    Hook {
        #[serde(default = "default_hook_rule")]
        rule: HookRule,
    },
    #[serde(rename = "three_density")]
    ThreeDensity {
        #[serde(with = "crate::rational")]
        alpha: Rational,
        #[serde(with = "crate::rational")]
        beta: Rational,
        #[serde(with = "crate::rational")]
        gamma: Rational,
        #[serde(default = "default_theta")]
        theta: String,
        #[serde(default = "default_block_rule")]
        n_rule: String,
    },
    #[serde(rename = "union")]
    Union { of: Vec<SetDescription> },
    #[serde(rename = "sumset")]
    Sumset { of: Vec<SetDescription> },
    #[serde(rename = "complement")]
    Complement { of: Box<SetDescription> },
}

fn default_k_rule() -> String {
    "none".into()
}

fn default_hook_rule() -> HookRule {
    HookRule::Factorial
}

fn default_theta() -> String {
    "sqrt2".into()
}

fn default_block_rule() -> String {
    "super_geometric".into()
}

/// Parses `none`, `double_gap`, `constant_gap` (with `gap`, default 2) or
/// `constant_gap:g`.
pub fn parse_k_rule(rule: &str, gap: Option<u64>) -> Result<KRule> {
    match rule {
        "none" => Ok(KRule::None),
        "double_gap" => Ok(KRule::DoubleGap),
        "constant_gap" => Ok(KRule::ConstantGap(gap.unwrap_or(2))),
        other => other
            .strip_prefix("constant_gap:")
            .and_then(|g| g.parse().ok())
            .map(KRule::ConstantGap)
            .ok_or_else(|| Error::invalid("rule", format!("unknown K rule {other:?}"))),
    }
}

impl TryFrom<Raw> for SetDescription {
    type Error = Error;

    fn try_from(raw: Raw) -> Result<Self> {
        match raw {
            Raw::Periodic { set } => Ok(set.into()),
            Raw::BAlpha { bits: Some(bits), alpha: None } => Self::b_alpha(&bits),
            Raw::BAlpha { bits: None, alpha: Some(a) } => Ok(Self::new(Family::BAlpha(DyadicUnion::from_alpha(&a)?))),
            Raw::BAlpha { .. } => Err(Error::invalid("bits", "give exactly one of `bits` or `alpha`")),
            Raw::DK { k_prefix, rule, gap } => Ok(Self::d_k(KSequence::new(k_prefix, parse_k_rule(&rule, gap)?)?)),
            Raw::X0 {} => Ok(Self::x0()),
            Raw::Weyl { theta, alpha } => Self::weyl(&theta, alpha),
            Raw::PT { t } => Ok(Self::p_t(t)),
            Raw::ThinBasis { m } => Self::thin_basis(m),
            Raw::BasisChain { moduli, sparsify } => Self::basis_chain(&moduli, sparsify),
            Raw::Hook { rule } => Ok(Self::hook(rule)),
            Raw::ThreeDensity { alpha, beta, gamma, theta, n_rule } => Self::three_density(alpha, beta, gamma, &theta, BlockRule::parse(&n_rule)?),
            Raw::Union { of } => Self::union(of),
            Raw::Sumset { of } => Self::sumset(of),
            Raw::Complement { of } => Ok(Self::complement(*of)),
        }
    }
}

impl TryFrom<serde_json::Value> for SetDescription {
    type Error = String;

    fn try_from(v: serde_json::Value) -> std::result::Result<Self, String> {
        SetDescription::from_json(v).map_err(|e| e.to_string())
    }
}

impl SetDescription {
    /// Tagged descriptions, or a bare periodic set
    /// (`{"q", "T", "prefix", "tail"}` or `{"progressions": ...}`). Nested
    /// parts are converted recursively so size caps surface as
    /// [`Error::LimitExceeded`] rather than as a shape error.
    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        let Some(family) = v.get("family") else {
            let set = EventuallyPeriodicSet::from_json(v)?;
            return Ok(set.into());
        };
        let nested = match family.as_str() {
            Some(f @ ("union" | "sumset" | "complement")) => f.to_string(),
            Some(f) => {
                let f = f.to_string();
                let serde_json::Value::Object(mut fields) = v else { unreachable!("has a family field") };
                fields.remove("family");
                let tagged = serde_json::Value::Object([(f.clone(), serde_json::Value::Object(fields))].into_iter().collect());
                let raw: Raw = serde_path_to_error::deserialize(tagged).map_err(|e| match field_error(e, "family") {
                    Error::InvalidArgument { field, reason } => {
                        let field = field.strip_prefix(&f).map(|p| p.trim_start_matches('.')).unwrap_or(&field);
                        Error::invalid(if field.is_empty() { "family" } else { field }, reason)
                    }
                    other => other,
                })?;
                return SetDescription::try_from(raw);
            }
            None => return Err(Error::invalid("family", "expected a string")),
        };
        let of = v.get("of").cloned().ok_or_else(|| Error::invalid("of", format!("missing field `of` for family {nested:?}")))?;
        if nested == "complement" {
            return Ok(Self::complement(Self::from_json(of)?));
        }
        let serde_json::Value::Array(items) = of else {
            return Err(Error::invalid("of", "expected a list of set descriptions"));
        };
        let parts = items.into_iter().map(Self::from_json).collect::<Result<Vec<_>>>()?;
        if nested == "union" {
            Self::union(parts)
        } else {
            Self::sumset(parts)
        }
    }
}

impl From<SetDescription> for serde_json::Value {
    fn from(d: SetDescription) -> Self {
        let tagged = serde_json::to_value(Raw::from(d)).expect("descriptions serialize");
        let serde_json::Value::Object(outer) = tagged else { unreachable!("struct variants serialize as objects") };
        let (name, fields) = outer.into_iter().next().expect("one variant");
        let mut out = serde_json::Map::new();
        out.insert("family".into(), serde_json::Value::String(name));
        if let serde_json::Value::Object(fields) = fields {
            out.extend(fields);
        }
        serde_json::Value::Object(out)
    }
}

impl From<SetDescription> for Raw {
    fn from(d: SetDescription) -> Raw {
        match d.family {
            Family::Periodic(set) => Raw::Periodic { set },
            Family::BAlpha(b) => Raw::BAlpha { bits: Some(b.bits_string()), alpha: None },
            Family::DK(d) => {
                let (rule, gap) = match d.k().rule() {
                    KRule::None => ("none", None),
                    KRule::DoubleGap => ("double_gap", None),
                    KRule::ConstantGap(g) => ("constant_gap", Some(g)),
                };
                Raw::DK { k_prefix: d.k().prefix().to_vec(), rule: rule.into(), gap }
            }
            Family::X0(_) => Raw::X0 {},
            Family::Weyl(w) => Raw::Weyl { theta: w.theta().label().into(), alpha: w.alpha().clone() },
            Family::PT(p) => Raw::PT { t: p.t },
            Family::ThinBasis { m, .. } => Raw::ThinBasis { m },
            Family::BasisChain(b) => Raw::BasisChain { moduli: b.moduli, sparsify: b.sparsified },
            Family::Hook(h) => Raw::Hook { rule: h.rule },
            Family::ThreeDensity(b) => Raw::ThreeDensity {
                alpha: b.alpha.clone(),
                beta: b.beta.clone(),
                gamma: b.gamma.clone(),
                theta: b.theta().label().into(),
                n_rule: b.rule.label(),
            },
            Family::Union(of) => Raw::Union { of },
            Family::Sumset(of) => Raw::Sumset { of },
            Family::Complement(of) => Raw::Complement { of },
        }
    }
}

/// Residues mod `m` of members `<= horizon`.
pub fn sampled_residues(x: &SetDescription, m: u64, horizon: u64) -> Result<ResidueSet> {
    let members = x.indicator(horizon + 1)?;
    let mut s = ResidueSet::empty(m)?;
    for n in members.ones() {
        s.insert(n as u64 % m)?;
    }
    Ok(s)
}

/// `zmod::project` for profiles, re-exported for callers that only hold a
/// description.
pub fn project_profile(s: &ResidueSet, d: u64) -> Result<ResidueSet> {
    zmod::project(s, d)
}

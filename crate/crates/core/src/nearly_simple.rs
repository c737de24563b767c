//! Spectrum of a nearly simple uniserial domain: four points up to
//! topological indistinguishability, plus a six-point example whose
//! T₀ quotient is that four-point space.

use std::fmt;

use serde_json::{json, Value};

use crate::ideal::SymbolicIdeal;
use crate::topology::{FiniteSpace, PointMeta, PointSet, SymbolicContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NsPoint {
    N00,
    NJJ,
    NJ0,
    N0J,
}

impl NsPoint {
    pub const ALL: [NsPoint; 4] = [NsPoint::N00, NsPoint::NJJ, NsPoint::NJ0, NsPoint::N0J];

    pub fn label(self) -> &'static str {
        match self {
            NsPoint::N00 => "N00",
            NsPoint::NJJ => "NJJ",
            NsPoint::NJ0 => "NJ0",
            NsPoint::N0J => "N0J",
        }
    }

    pub fn from_label(s: &str) -> Option<NsPoint> {
        NsPoint::ALL.into_iter().find(|p| p.label() == s)
    }

    pub fn index(self) -> usize {
        NsPoint::ALL.iter().position(|&p| p == self).expect("listed")
    }

    pub fn metadata(self) -> PointMeta {
        use SymbolicIdeal::Zero;
        let j = SymbolicIdeal::J;
        match self {
            NsPoint::N00 => PointMeta { ass: Zero, div: Zero, ann: Zero },
            NsPoint::NJJ => PointMeta { ass: j, div: j, ann: j },
            NsPoint::NJ0 => PointMeta { ass: j, div: Zero, ann: Zero },
            NsPoint::N0J => PointMeta { ass: Zero, div: j, ann: Zero },
        }
    }

    /// The generic pairs presenting the point.
    pub fn presenting_pairs(self) -> Vec<(SymbolicIdeal, SymbolicIdeal)> {
        use SymbolicIdeal::Zero;
        let j = SymbolicIdeal::J;
        match self {
            NsPoint::N00 => vec![(Zero, Zero)],
            NsPoint::NJJ => vec![(j, j)],
            NsPoint::NJ0 => vec![(j, Zero)],
            NsPoint::N0J => vec![(Zero, j)],
        }
    }

    pub fn to_json(self) -> Value {
        json!({"t": self.label()})
    }

    pub fn from_json(value: &Value) -> Result<NsPoint, String> {
        let tag = value.get("t").and_then(Value::as_str).ok_or("point needs a string field \"t\"")?;
        NsPoint::from_label(tag).ok_or_else(|| format!("unknown point tag {tag:?}"))
    }
}

impl fmt::Display for NsPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `cl{pt}`.
pub fn ns_closure(pt: NsPoint) -> Vec<NsPoint> {
    match pt {
        NsPoint::NJ0 => vec![NsPoint::N00, NsPoint::NJ0],
        NsPoint::N0J => vec![NsPoint::N00, NsPoint::N0J],
        p => vec![p],
    }
}

pub fn ns_is_closed(s: &[NsPoint]) -> bool {
    s.iter().all(|&p| ns_closure(p).iter().all(|q| s.contains(q)))
}

/// The four-point space with labels in [`NsPoint::ALL`] order.
pub fn ns_space() -> FiniteSpace {
    let labels = NsPoint::ALL.iter().map(|p| p.label().to_string()).collect();
    FiniteSpace::from_fn(labels, |x, y| ns_closure(NsPoint::ALL[x]).contains(&NsPoint::ALL[y]))
        .expect("four points")
}

/// Trichotomy data for [`ns_space`]; no closed set needs a minimal pair.
pub fn ns_trichotomy_context(space: &FiniteSpace) -> SymbolicContext<'_> {
    SymbolicContext {
        space,
        meta: NsPoint::ALL.iter().map(|p| p.metadata()).collect(),
        pairs: NsPoint::ALL.iter().map(|p| p.presenting_pairs()).collect(),
        minimal: Box::new(|_: PointSet| None),
    }
}

/// The six points of the example built from a localization of a group ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NsExamplePoint {
    Simple,
    EInjJ,
    EInjR,
    PEr,
    PEJ,
    Qfield,
}

impl NsExamplePoint {
    pub const ALL: [NsExamplePoint; 6] = [
        NsExamplePoint::Simple,
        NsExamplePoint::EInjJ,
        NsExamplePoint::EInjR,
        NsExamplePoint::PEr,
        NsExamplePoint::PEJ,
        NsExamplePoint::Qfield,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NsExamplePoint::Simple => "Simple",
            NsExamplePoint::EInjJ => "EInjJ",
            NsExamplePoint::EInjR => "EInjR",
            NsExamplePoint::PEr => "PEr",
            NsExamplePoint::PEJ => "PEJ",
            NsExamplePoint::Qfield => "Qfield",
        }
    }

    /// The presenting pair, for display only.
    pub fn pair_label(self) -> &'static str {
        match self {
            NsExamplePoint::Simple => "⟨J,J⟩",
            NsExamplePoint::EInjJ => "⟨J,0⟩",
            NsExamplePoint::EInjR => "⟨Rr,0⟩",
            NsExamplePoint::PEr => "⟨0,rR⟩",
            NsExamplePoint::PEJ => "⟨0,J⟩",
            NsExamplePoint::Qfield => "⟨0,0⟩",
        }
    }

    /// The class of the point in the four-point quotient.
    pub fn class(self) -> NsPoint {
        match self {
            NsExamplePoint::Simple => NsPoint::NJJ,
            NsExamplePoint::EInjJ | NsExamplePoint::EInjR => NsPoint::NJ0,
            NsExamplePoint::PEr | NsExamplePoint::PEJ => NsPoint::N0J,
            NsExamplePoint::Qfield => NsPoint::N00,
        }
    }
}

/// The six-point space: specialization is that of the classes.
pub fn example_space() -> FiniteSpace {
    let labels = NsExamplePoint::ALL.iter().map(|p| p.name().to_string()).collect();
    FiniteSpace::from_fn(labels, |x, y| {
        ns_closure(NsExamplePoint::ALL[x].class()).contains(&NsExamplePoint::ALL[y].class())
    })
    .expect("six points")
}

/// `{{Simple}, {EInjJ, EInjR}, {PEr, PEJ}, {Qfield}}` with their classes.
pub fn example_t0_classes() -> Vec<(Vec<NsExamplePoint>, NsPoint)> {
    NsPoint::ALL
        .iter()
        .map(|&c| {
            let members = NsExamplePoint::ALL.iter().copied().filter(|p| p.class() == c).collect();
            (members, c)
        })
        .filter(|(m, _): &(Vec<NsExamplePoint>, NsPoint)| !m.is_empty())
        .collect()
}

/// The T₀ quotient of [`example_space`] as an isomorphism onto [`ns_space`]:
/// entry `i` is the image of quotient point `i`.
pub fn example_quotient_iso() -> Option<(FiniteSpace, Vec<usize>)> {
    let (quotient, _) = example_space().t0_quotient();
    let iso = quotient.find_isomorphism(&ns_space())?;
    Some((quotient, iso))
}

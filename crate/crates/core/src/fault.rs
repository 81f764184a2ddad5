//! Deliberate defects used as negative controls.
//!
//! Every check accepts an optional [`Fault`]; with one injected the check must
//! fail, which shows that the check can detect the defect at all.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Duality identity without the `(p,t) → (t,p)` swap on the dual factor.
    DualityNoSwap,
    /// `G_{2,3}` replaced by its inverse in Hecke relation checks.
    HeckeInverseG23,
    /// Word order of `Y_2` reversed in the affine Hecke checks.
    AffineY2Swapped,
    /// The `(1−q²)x` entry of `R̄(x)` replaced by `1−q²`.
    RbarEntry,
    /// `q^{N−1}` prefactor dropped from `π(e_0)`.
    Level0NoPrefactor,
    /// Fermionic sum with every `∏(n_j+1)` replaced by 1.
    FermionicNoDim,
    /// Closed-form highest weight vector without the `(p,t)` swap.
    HwvNoSwap,
    /// Fusion series `F₊₊` normalized by `ξ` instead of `η`.
    FusionEta,
}

impl Fault {
    pub const ALL: [Fault; 8] = [
        Fault::DualityNoSwap,
        Fault::HeckeInverseG23,
        Fault::AffineY2Swapped,
        Fault::RbarEntry,
        Fault::Level0NoPrefactor,
        Fault::FermionicNoDim,
        Fault::HwvNoSwap,
        Fault::FusionEta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::DualityNoSwap => "duality-no-swap",
            Fault::HeckeInverseG23 => "hecke-inverse-g23",
            Fault::AffineY2Swapped => "affine-y2-swapped",
            Fault::RbarEntry => "rbar-entry",
            Fault::Level0NoPrefactor => "level0-no-prefactor",
            Fault::FermionicNoDim => "fermionic-no-dim",
            Fault::HwvNoSwap => "hwv-no-swap",
            Fault::FusionEta => "fusion-eta",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Fault::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Parse(format!("unknown fault `{s}`")))
    }
}

pub(crate) fn active(fault: Option<Fault>, which: Fault) -> bool {
    fault == Some(which)
}

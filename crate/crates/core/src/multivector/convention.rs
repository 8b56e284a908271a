//! Adapters for contraction conventions found in the literature.
//!
//! `I` is the native one. `II` swaps the sides. `III` reverses the
//! contractor. `Hestenes` picks the `III` contraction by grade comparison.

use super::Multivector;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    ILeft,
    IRight,
    IILeft,
    IIRight,
    IIILeft,
    IIIRight,
    Hestenes,
}

impl Convention {
    pub const ALL: [Convention; 7] = [
        Convention::ILeft,
        Convention::IRight,
        Convention::IILeft,
        Convention::IIRight,
        Convention::IIILeft,
        Convention::IIIRight,
        Convention::Hestenes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::ILeft => "i_left",
            Convention::IRight => "i_right",
            Convention::IILeft => "ii_left",
            Convention::IIRight => "ii_right",
            Convention::IIILeft => "iii_left",
            Convention::IIIRight => "iii_right",
            Convention::Hestenes => "hestenes",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

/// The contraction of `a` and `b` written `a ∘ b` in the chosen convention.
/// For left contractions `a` is the contractor, for right ones `b` is.
pub fn convention_contract(conv: Convention, a: &Multivector, b: &Multivector) -> Result<Multivector> {
    match conv {
        Convention::ILeft => a.lcontr(b),
        Convention::IRight => a.rcontr(b),
        Convention::IILeft => b.rcontr(a),
        Convention::IIRight => b.lcontr(a),
        Convention::IIILeft => a.reversion().lcontr(b),
        Convention::IIIRight => a.rcontr(&b.reversion()),
        Convention::Hestenes => {
            let p = a.grade_or(0)?;
            let q = b.grade_or(0)?;
            if p <= q {
                convention_contract(Convention::IIILeft, a, b)
            } else {
                convention_contract(Convention::IIIRight, a, b)
            }
        }
    }
}

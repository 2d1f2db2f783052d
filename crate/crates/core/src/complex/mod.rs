//! Twisted cochain complexes over ℬ and 𝒜.

mod aflavor;
mod bflavor;
mod split;
mod standard;
mod util;

pub use aflavor::{AChainMap, AComplex};
pub use bflavor::{BChainMap, BComplex, LevelHomology};
pub use split::{roundtrip_a, roundtrip_b, split_chain_map, split_to_b, unsplit_chain_map, unsplit_to_a};
pub use standard::{
    cone_a, cone_b, make_c_a, make_c_b, make_em, make_v_a, make_v_b, total_homology_a, total_homology_b,
};

use crate::adams::AObject;

/// Either flavor of twisted complex.
#[derive(Clone, Debug)]
pub enum TwistedComplex {
    /// `(T, 1)`-twisted, values in 𝒜.
    A(AComplex),
    /// `(T^{2p−2}, 2p−2)`-twisted, values in ℬ.
    B(BComplex),
}

impl TwistedComplex {
    pub fn flavor(&self) -> &'static str {
        match self {
            TwistedComplex::A(_) => "C1-A",
            TwistedComplex::B(_) => "C2p2-B",
        }
    }

    /// `⊕ H^i[−i]` over one period.
    pub fn total_homology(&self) -> AObject {
        match self {
            TwistedComplex::A(c) => total_homology_a(c),
            TwistedComplex::B(c) => total_homology_b(c),
        }
    }

    pub fn to_b(&self) -> BComplex {
        match self {
            TwistedComplex::A(c) => split_to_b(c),
            TwistedComplex::B(c) => c.clone(),
        }
    }

    pub fn to_a(&self) -> AComplex {
        match self {
            TwistedComplex::A(c) => c.clone(),
            TwistedComplex::B(c) => unsplit_to_a(c),
        }
    }
}

#[cfg(test)]
mod tests;

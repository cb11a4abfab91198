//! Known disagreements between the published constructions and direct
//! computation. Each has a stable identifier used in reports.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Discrepancy {
    /// Printed relative signs or phases are not reproduced by the literal
    /// reordering and quantization rules; the state agrees up to local phases.
    PhaseConvention,
    /// The printed weight prefactor does not normalize the computed state.
    Prefactor,
    /// [b′_z, b²] and [b′_z, b†²] close with constants ∓4, printed as ∓8.
    SqueezeConstant,
    /// The printed N₁ omits the square on the overlap modulus.
    N1Square,
    /// The one-variable squeezed qudit weight needs negative powers of ξ.
    SqueezedQudit,
    /// The printed qudit weight pairs c⁻¹_{n−1−k} with the wrong monomial.
    QuditIndex,
    /// The mixed coherent–squeezed recipe cannot reach its printed target.
    MixedRecipe,
    /// θθ̄ = q̄θ̄θ is incompatible with conjugation being an anti-homomorphism for n ≥ 3.
    ConjSameIndex,
    /// The printed d_ij phase differs from the computed one off the diagonal.
    DijPhase,
    /// The printed φ-type super state recipe yields a ψ-type state.
    SuperPhi,
}

impl Discrepancy {
    pub const ALL: [Discrepancy; 10] = [
        Discrepancy::PhaseConvention,
        Discrepancy::Prefactor,
        Discrepancy::SqueezeConstant,
        Discrepancy::N1Square,
        Discrepancy::SqueezedQudit,
        Discrepancy::QuditIndex,
        Discrepancy::MixedRecipe,
        Discrepancy::ConjSameIndex,
        Discrepancy::DijPhase,
        Discrepancy::SuperPhi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Discrepancy::PhaseConvention => "D-PHASE-CONVENTION",
            Discrepancy::Prefactor => "D-PREFACTOR",
            Discrepancy::SqueezeConstant => "D-SQUEEZE-CONSTANT",
            Discrepancy::N1Square => "D-N1-SQUARE",
            Discrepancy::SqueezedQudit => "D-SQUEEZED-QUDIT",
            Discrepancy::QuditIndex => "D-QUDIT-INDEX",
            Discrepancy::MixedRecipe => "D-MIXED-RECIPE",
            Discrepancy::ConjSameIndex => "D-CONJ-SAME-INDEX",
            Discrepancy::DijPhase => "D-DIJ-PHASE",
            Discrepancy::SuperPhi => "D-SUPER-PHI",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Discrepancy::PhaseConvention => {
                "printed signs/phases differ from the literal rules; state matches up to local phases"
            }
            Discrepancy::Prefactor => "printed prefactor does not normalize the computed state",
            Discrepancy::SqueezeConstant => "squeezed-pair closure constants are -4/+4, printed -8/+8",
            Discrepancy::N1Square => "normalization of the orthogonalized pair needs |<a|b>|^2",
            Discrepancy::SqueezedQudit => {
                "one-variable squeezed weight needs negative exponents; those kets are unreachable"
            }
            Discrepancy::QuditIndex => {
                "printed qudit weight mis-indexes c^-1; re-indexed weight gives the uniform state"
            }
            Discrepancy::MixedRecipe => "mixed coherent-squeezed weight leaves stray kets and Grassmann content",
            Discrepancy::ConjSameIndex => "same-index relation breaks (ab)^dagger = b^dagger a^dagger for n >= 3",
            Discrepancy::DijPhase => "off-diagonal d_ij phase exponent is (2i-1)j, printed (2j-1)j",
            Discrepancy::SuperPhi => "printed phi-type super recipe produces a psi-type state",
        }
    }
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

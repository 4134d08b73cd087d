//! Fixed-point localization: partitions and tangent weights for Hilbert
//! schemes of points in C², commuting pairs for symmetric products, and the
//! toric data of A_{k-1} resolutions.
//!
//! Every fixed point is isolated, so each contribution is a product of
//! plain or character-shifted theta ratios, one per tangent weight.

mod genera;
mod orbifold;
mod partition;
mod toric;

pub use self::genera::{ell_c2, ell_hilb, ell_hilb_numeric, ell_orb_sym, ell_orb_sym_bounded, Normalization};
pub use self::orbifold::{commuting_pairs, expected_pair_count, OrbitCharacterData, OrbitCharacters, Perm, DEFAULT_PAIR_BOUND};
pub use self::partition::{partition_count, partitions, tangent_weights, Partition, TangentWeightSet};
pub use self::toric::{ak_fixed_data, ell_ak_resolution, ell_orb_cyclic, AkTorus, ToricFixedData, ToricFixedPoint};

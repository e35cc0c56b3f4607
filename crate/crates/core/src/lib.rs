//! Exact computations and bound evaluators for binary linear codes on the
//! binary symmetric channel.
//!
//! The crate is organised around a handful of small, exact building blocks:
//!
//! * [`gf2`] — bit-packed vectors, matrices, rank / nullspace over GF(2),
//!   coordinate permutations.
//! * [`codes`] — Reed-Muller, repetition and random linear codes, duals,
//!   transitivity witnesses.
//! * [`weights`] — exact weight distributions by enumeration, entropy
//!   utilities, and the weight-distribution bound evaluators.
//! * [`fourier`] — exact Fourier coefficients of level functions
//!   (scaled Krawtchouk values), the Parseval identity, and saddle-point
//!   coefficient bounds.
//! * [`collision`] — syndrome collision counts computed two independent
//!   ways, and the list-size tail bound.
//! * [`decode`] — the max-likelihood syndrome list decoder, its layered
//!   variant, the codeword-decoder lift, and list-size bound evaluators.
//! * [`channel`] — BSC / weight-shell error models and the Monte Carlo
//!   experiment harness.
//!
//! Everything that claims to be exact is exact: counts and coefficients are
//! big integers, collision counts are big rationals, and the only floating
//! point lives in the log-domain bound evaluators.
//!
//! ```
//! use listlab_core::caps::Caps;
//! use listlab_core::codes::rm_code;
//! use listlab_core::collision::{collision_count_direct, collision_count_fourier};
//! use listlab_core::weights::weight_distribution;
//!
//! let caps = Caps::default();
//! let code = rm_code(3, 1)?;
//! assert_eq!(code.dimension(), 4);
//!
//! // All 14 non-constant codewords of RM(3,1) have weight 4.
//! let dist = weight_distribution(&code, &caps)?;
//! assert_eq!(dist.count(4), 14);
//!
//! // The two collision computations agree as exact rationals.
//! let direct = collision_count_direct(&code, &[2], &caps)?;
//! let fourier = collision_count_fourier(&code, &[2], &caps)?;
//! assert_eq!(direct.coll_count, fourier.coll_count);
//! # Ok::<(), listlab_core::Error>(())
//! ```

pub mod binomial;
pub mod caps;
pub mod channel;
pub mod codes;
pub mod collision;
pub mod decode;
pub mod error;
pub mod fourier;
pub mod gf2;
pub mod rng;
pub mod weights;

// Downstream crates need the same exact-arithmetic types.
pub use num_bigint;
pub use num_rational;
pub use num_traits;

pub use caps::Caps;
pub use channel::{ChannelModel, ExperimentResult};
pub use codes::{CodeFamily, LinearCode};
pub use collision::CollisionReport;
pub use decode::{BoundReport, DecodeResult};
pub use error::{Error, Result};
pub use fourier::{LevelCoefficient, SaddlePoint, SaddleRegime};
pub use gf2::{BitVector, Gf2Matrix, Permutation};
pub use weights::{LogProb, WeightDistribution};

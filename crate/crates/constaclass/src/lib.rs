//! Classification of constacyclic codes over finite fields.
//!
//! A length-n constacyclic code with constant `lambda` is an ideal of
//! F_q[X]/(X^n - lambda); its polynomial generator is a monic divisor of
//! X^n - lambda. This crate constructs the fields, decides the length-n
//! isometry relation on constants together with explicit witnesses, produces
//! the closed-form irreducible factorization of X^(ell^t * p^s) - lambda
//! (cyclotomic, trinomial and binomial families), enumerates all code
//! generators, and certifies everything against an independent factorization
//! oracle.
//!
//! ```
//! use constaclass::{factor_consta, enumerate_codes, ConstaLength, FiniteField};
//!
//! // X^6 - xi over GF(2^4) has a single irreducible factor, squared
//! let field = FiniteField::new(2, 4)?;
//! let length = ConstaLength { ell: 3, t: 1, s: 1 };
//! let fact = factor_consta(&field, length, field.generator())?;
//! assert_eq!(fact.factors.len(), 1);
//! assert_eq!(fact.factors[0].0.format_text(), "X^3 + xi^8");
//!
//! // so there are three xi-constacyclic codes of length 6
//! let codes = enumerate_codes(&field, &fact, 6, field.generator(), 1000)?;
//! assert_eq!(codes.iter().map(|c| c.dimension).collect::<Vec<_>>(), [6, 3, 0]);
//! # Ok::<(), constaclass::Error>(())
//! ```

pub mod arith;
pub mod codes;
pub mod constafactor;
mod conway;
pub mod cyclotomic;
pub mod error;
pub mod extension;
pub mod factorizer;
pub mod field;
pub mod isometry;
pub mod poly;

pub use codes::{
    enumerate_codes, image_code, weight_enumerator, ConstacyclicCode, WeightEnumerator,
};
pub use constafactor::{
    blake_h_set, consta_params, factor_consta, BlakeParams, ConstaCase, ConstaLength, ConstaParams,
};
pub use cyclotomic::{
    cosets, factor_xn_minus_one, minimal_polynomial, CyclotomicCoset, LengthDecomposition,
};
pub use error::{Error, Result};
pub use extension::{extend_field, ExtElement, FieldExtension};
pub use factorizer::{
    factorize, factorize_seeded, is_irreducible, serret_irreducible, Factorization, Provenance,
};
pub use field::{FieldElement, FiniteField};
pub use isometry::{
    apply_phi, class_count, classes, isometric, witness, IsometryClass, IsometryWitness,
};
pub use poly::Poly;

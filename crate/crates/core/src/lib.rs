//! Exact-arithmetic toolkit for standard graded artinian algebras.
//!
//! The crate computes Hilbert functions of graded quotients over the
//! rationals or a prime field, classifies socle structure (level /
//! Gorenstein / type), decides the Weak and Strong Lefschetz Properties
//! with reproducible certificates, implements the binomial-expansion
//! growth calculus (Macaulay / Gotzmann / Green bounds), and works with
//! Macaulay inverse systems. A catalog of reference algebras and a set of
//! randomized verification experiments live in [`corpus`].
//!
//! All linear algebra is exact: arbitrary-precision rationals with
//! fraction-free elimination, or canonical residues modulo a prime.

pub mod bounds;
pub mod corpus;
pub mod dual;
pub mod field;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod quotient;

pub use bounds::{
    binomial_expansion, expansion_shift, gotzmann_growth, green_bound, macaulay_bound,
    BinomialExpansion, HilbertSeq, SequenceError,
};
pub use corpus::{
    build_record, catalog, experiment_init_deg2, experiment_small_s, experiment_socle_bounds,
    find_example, probe_open_question, run_example, run_record, Construction, CorpusError,
    ExampleDiff, ExampleRecord, ExperimentReport,
};
pub use dual::{
    algebra_from_dual, random_dual_form, random_gorenstein, random_gorenstein_constrained,
    random_level, watanabe_check, DegreeBound, DualError, DualModule, HessianCheck,
};
pub use field::{field_arith, random_scalar, ArithOp, FieldError, FieldSpec, Scalar};
pub use linalg::{Echelon, ScalarMat};
pub use poly::{
    contract, contract_form, gcd_forms, hessian_det, monomial_basis, monomial_count, parse_form,
    parse_forms, parse_ring, HomogeneousForm, Monomial, ParseError, ParseErrorKind, PolyError,
    RingCtx,
};
pub use lefschetz::{
    gcd_criterion_check, mult_map, positive_first_difference, quotient_by_linear_hf,
    sample_general_forms, slp_check, wlp_check, CheckKind, CriterionError, Expectation,
    FormProvenance, GcdCriterionReport, LefschetzOptions, LefschetzReport, LinearForm,
    MultiplicationMap, RankRow, SampleOptions, SamplingInfo, Verdict, Witness,
};
pub use quotient::{
    check_exact_sequence, hilbert_function, Classification, DegreeBasis, ExactSequenceCheck,
    GradedIdeal, QuotientAlgebra, QuotientError,
};

/// Default seed for every randomized routine; override with `--seed` or the
/// `LEFSCHETZ_SEED` environment variable in the CLI.
pub const DEFAULT_SEED: u64 = 42;

/// Default coefficient bound for sampling linear forms over the rationals.
pub const DEFAULT_BOUND: u64 = 1 << 20;

/// Default hard cap on the degree scan when testing that a quotient is
/// artinian.
pub const DEFAULT_CAP: usize = 64;

/// Derives the seed for a parallel or serial sub-task from a base seed and
/// the task index, so runs agree regardless of scheduling.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}

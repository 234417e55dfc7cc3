//! Exact-arithmetic certification of relation numbers.
//!
//! A rational q = s/r is a *relation number* when the matrices
//! a = [[1, 0], [1, 1]] and b_q = [[1, q], [0, 1]] generate a non-free
//! group. Everything here runs on exact integers: two iterative
//! certification algorithms that search the projective orbit of (1, 0)
//! for a return to the x-axis, witness words checkable independently by
//! orbit trace and matrix product, residue-class certificates that cover
//! whole arithmetic progressions of denominators at once, an inductive
//! ladder for numerator 24, and density bounds for the certified set.

pub mod arith;
pub mod certify;
pub mod orbit;
pub mod residue;

pub use arith::{gcd, int, sign, shifted_remainder, ArithError, Int, Rational};
pub use certify::{
    certify, min3, rel_num, rel_num_min, sweep, Algorithm, Certification, Outcome, TraceSummary,
};
pub use orbit::{
    apply_a, apply_b, integer_witness, is_step_witness, matrix_of_word, run_word,
    witness_to_identity_word, Mat2, OrbitError, ProjPoint, Step, StepKind, Word,
};
pub use residue::{
    basic_families_check, good_class_members, is_good_with, member_witness, negate_certificate,
    progression_modulus, scale_certificate, search_certificate, small_denominator_good,
    small_gcd_certificate, small_gcd_check, two_step_witness, FamilyFinding, GoodCertificate,
    ResidueClass, ResidueError,
};

//! Exact decomposition of tensor products of k[x]-modules into
//! indecomposables, and the representation rings this induces for the loop
//! quiver and the cyclic quivers, over the rationals, prime fields, and a
//! rational real-closed model. Every closed-form product in the crate has an
//! independent brute-force counterpart in [`oracle`].

pub mod field;
pub mod green;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod ring;

pub use field::{Field, FieldElement, FieldError, GaussianRational};
pub use green::{
    ind_map, res_map, rprime_mul, v_to_w, w_expand, w_times_v, GreenError, RPrimeElement,
    WPolynomial,
};
pub use matrix::{
    companion, jordan_block, real_block, ExactMatrix, InvariantFactors, MatrixError, PolyMatrix,
};
pub use oracle::{
    generic_decompose, jordan_type_unipotent, match_decomposition, realization_field,
    realize_module, rep_fingerprint, verify_module_product, JordanType, OracleError,
    RepFingerprint, VerificationReport,
};
pub use poly::{Polynomial, PolyError};
pub use quiver::{
    band_band_tensor, direct_sum_rep, qring_mul, realize, realize_element, string_band_tensor,
    string_tensor, tensor_rep, BandDesc, QuiverClass, QuiverRep, QuiverRingElement, QuiverShape,
    StringDesc,
};
pub use ring::{
    module_of_poly_power, ring_mul, tensor_char0, tensor_charp, tensor_indecomposable,
    tensor_nil, tensor_realclosed, Indecomposable, RingElement, RingError,
};

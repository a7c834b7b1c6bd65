//! Generalized inverses, relative regularity, and finite-ring analyzers.

mod endo;
mod geninv;
mod pair;
mod ring;

pub use endo::{central_endomorphisms, central_geninv, central_geninv_with_budget, end_ring, end_ring_with_budget, image_kernel_decompose, CentralInverse};
pub use geninv::{generalized_inverse, is_generalized_inverse, GenInvResult, Obstruction};
pub use pair::{
    is_regular_object, is_regular_pair, regular_object_report, regular_pair_report, regularity_transfer_check,
    sample_regular_pair, transfer_report, transfer_report_cached, PairCache, ObjectReport, PairReport, TransferClause, TransferReport,
};
pub use ring::{center, cyclic_ring, is_semiprime, is_vn_regular, jacobson_radical, matrix_ring, FiniteRing, TABLE_LIMIT};

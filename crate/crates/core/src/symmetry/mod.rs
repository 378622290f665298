//! Holomorphic polynomial vector fields, the model's symmetry catalog,
//! tangency verification, structure tables, flows, and transport checks.

pub mod field;
pub mod flow;
pub mod hol;
pub mod table;
pub mod tangency;

pub use field::{
    catalog_field, e_basis, f_basis, g_basis, holo_coords, lie_bracket, CatalogName, HoloField,
};
pub use flow::{
    flow_map, flow_map_symbolic, model_function, move_to_origin, preserves_model_function,
    recentering_maps, rescaling_constants, rescaling_map, transport_check, w_translation, FlowGen,
    PolyMap, TransportReport,
};
pub use hol::hol_basis;
pub use table::{
    ad_matrix_on, express_in_span, grading_weights, span_rank, structure_table, BracketTable,
    SpanKind,
};
pub use tangency::{max_guaranteed_degree, tangency_check, tangency_residual, Tangency};

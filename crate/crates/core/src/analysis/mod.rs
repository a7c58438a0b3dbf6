//! Structural and security analysis: square-code distinguisher, the
//! auxiliary code B, information set decoding and key sizes.

pub mod bcode;
pub mod isd;
pub mod square;
pub mod tables;

pub use bcode::{bcode_parity, flatten_rows, glue_generator, interleave, interleave_rows, subfield_subcode};
pub use isd::{
    classical_estimate, isd_attack, isd_estimate, success_probability, AttackOutcome, IsdAttack, IsdCostReport,
    IsdError, SuccessCount,
};
pub use square::{distinguisher_experiment, schur_matrix, schur_product, square_dim, ArmReport, DistinguisherReport, SquareReport};
pub use tables::{key_size_bits, render_json_lines, render_text, reproduce_tables, TableCheck, TableRow, PUBLISHED};

//! Model files, built-in examples and CSV export.

pub mod csv_export;
pub mod gridworld;
pub mod spec_file;

pub use csv_export::{
    csed_rows, decoder_label, decoding_rows, encoder_label, export_region_csv, frontier_rows,
    read_csv, write_csv, CsvRow,
};
pub use gridworld::{generate_gridworld, nodshake, GridWorldParams};
pub use spec_file::{parse_model, parse_unchecked, read_model, to_spec_string, write_model};

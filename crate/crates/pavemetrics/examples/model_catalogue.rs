//! Prints the audit catalogue of the eight embedded models.
//!
//! ```bash
//! cargo run -p pavemetrics --example model_catalogue
//! ```

fn main() {
    print!("{}", pavemetrics_core::registry::catalogue_text());
}

//! Reading, writing and drawing instances.

mod json;
mod svg;

pub use json::{instance_to_value, parse_instance, serialize_instance, FORMAT_VERSION};
pub use svg::render_svg;

use std::path::Path;

use crate::error::Result;
use crate::model::Instance;

pub fn read_instance_file(path: &Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

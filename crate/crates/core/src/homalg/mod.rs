//! Homological algebra in ℬ: resolutions, Ext, extension classes.

mod classes;
mod dimshift;
mod ext;
mod resolution;

pub use classes::{
    comparison, ext_class_in, ext_class_of, lifting_obstruction, pullback, pullback_realization, pushforward,
    pushout_realization, verify_ladder, ExtClass, Ladder, Lifting, ShortExact,
};
pub use dimshift::{dimension_shift_check, dimension_shift_check_ses, DimShiftReport};
pub use ext::{ext, ext_all, ext_in, ExtGroup, HomComplex};
pub use resolution::{FreeResolution, OpMatrix};

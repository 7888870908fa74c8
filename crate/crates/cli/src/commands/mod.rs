pub mod estimate;
pub mod feasibility;
pub mod pathology;
pub mod reproduce;
pub mod simulate;
pub mod theory;

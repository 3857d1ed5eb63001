pub mod exact;
pub mod fiber;
pub mod monomial;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod syntax;
pub mod weyl;

pub mod dyneval;
pub mod error;
pub mod kronecker;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod rational_lift;
pub mod ring;
pub mod slp;

pub mod brieskorn;
pub mod checks;
pub mod cli;
pub mod enumerate;
pub mod fibers;
pub mod laurent;
pub mod recovery;
pub mod table;
pub mod zeta;

pub mod brieskorn;
pub mod cli;
pub mod contact;
pub mod error;
pub mod exterior;
pub mod monodromy;
pub mod openbook;
pub mod report;
pub mod roots;
pub mod suite;

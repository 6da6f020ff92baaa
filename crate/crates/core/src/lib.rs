//! Exact-arithmetic Schmidt games for mixed badly approximable numbers.

pub mod cli;
pub mod dangerous;
pub mod dnorm;
pub mod exactnum;
pub mod game;
pub mod strategy;
pub mod verify;

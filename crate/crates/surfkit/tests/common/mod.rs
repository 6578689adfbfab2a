#![allow(dead_code)]

pub mod conjugacy;
pub mod graphs;
pub mod tracer;

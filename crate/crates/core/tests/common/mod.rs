#![allow(dead_code)]

pub mod gen;
pub mod golden;
pub mod oracle;
pub mod scenarios;

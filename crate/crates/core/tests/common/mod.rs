#![allow(dead_code)]

pub mod dense;

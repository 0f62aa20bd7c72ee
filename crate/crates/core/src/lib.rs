pub mod cover;
pub mod dartgraph;
pub mod normalize;
pub mod oracle;
pub mod permgrp;
pub mod quotient;
pub mod sample;
pub mod selftest;
pub mod symmetry;
pub mod voltage;

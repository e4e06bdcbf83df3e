//! Benchmark fixtures shared by the criterion targets.

use std::f64::consts::{FRAC_PI_4, PI};
use wienerhopf::diffraction::{sommerfeld_problem, DiffractionProblem, PhysicalParams};
use wienerhopf::mapping::RationalMap;

pub fn sommerfeld_fixture(map: RationalMap) -> DiffractionProblem {
    sommerfeld_problem(&PhysicalParams::sommerfeld(1.0, PI / 5.0), map, FRAC_PI_4)
        .expect("reference parameters are valid")
}

#![allow(dead_code)]

use kmult::algebra::parse_rational;
use kmult::blattner::{HcParamG, HcParamK};
use kmult::Rational;

pub fn rats(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|s| parse_rational(s).expect("valid rational")).collect()
}

pub fn lam(a: &[&str], b: &[&str]) -> HcParamG {
    HcParamG::new(rats(a), rats(b))
}

pub fn kt(a: &[&str], b: &[&str]) -> HcParamK {
    HcParamK::new(rats(a), rats(b))
}

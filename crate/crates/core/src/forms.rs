use serde::Serialize;

use crate::lorentz::{CausalCharacter, Vec3L};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondForm {
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl SecondForm {
    pub fn det(&self) -> f64 {
        self.l * self.n - self.m * self.m
    }

    pub fn flipped(self) -> SecondForm {
        SecondForm {
            l: -self.l,
            m: -self.m,
            n: -self.n,
        }
    }
}

/// Fundamental forms, normal and curvatures at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormSample {
    pub first: FirstForm,
    pub second: SecondForm,
    pub gauss: Vec3L,
    pub k: f64,
    pub h: f64,
    pub character: CausalCharacter,
}

impl FormSample {
    pub fn det_i(&self) -> f64 {
        self.first.det()
    }

    pub fn det_ii(&self) -> f64 {
        self.second.det()
    }
}

//! The five canonical desk-scale instances, all over `F_2` on `A = F_2` or
//! `A = F_2 x F_2` with basis `f1 = (1,0)`, `f2 = (0,1)`.

use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::field::Fp;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::partial_action::{GlobalActionInstance, PartialAction};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub pa: PartialAction,
}

pub const NAMES: [&str; 5] = ["triv", "swap", "shift", "null", "trivact"];

fn f2() -> Fp {
    Fp::new(2).expect("2 is prime")
}

fn el(v: &[u64]) -> AlgebraElement {
    AlgebraElement::from_vec(v.to_vec())
}

fn mat(rows: &[&[u64]]) -> Matrix {
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::from_rows(f2(), rows[0].len(), &rows).expect("fixture matrix is well formed")
}

fn build(alg: FiniteAlgebra, grp: FiniteGroup, idem: Vec<AlgebraElement>, maps: Vec<Matrix>) -> PartialAction {
    PartialAction::new(alg, grp, idem, maps).expect("fixture is well formed")
}

/// FIX-TRIV: the trivial group acting on `F_2`.
pub fn trivial() -> PartialAction {
    let a = FiniteAlgebra::prime_field(f2());
    build(a, FiniteGroup::trivial(), vec![el(&[1])], vec![mat(&[&[1]])])
}

/// FIX-SWAP: `Z/2` swapping the two factors of `F_2 x F_2`.
pub fn swap() -> PartialAction {
    let a = FiniteAlgebra::split_semisimple(f2(), 2);
    build(
        a,
        FiniteGroup::cyclic(2),
        vec![el(&[1, 1]), el(&[1, 1])],
        vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[0, 1], &[1, 0]])],
    )
}

/// FIX-SHIFT: `Z/3 = {1, s, s^2}` with `e_s = f2`, `e_{s^2} = f1`,
/// `alpha_s(f1) = f2`, `alpha_{s^2}(f2) = f1`; the restriction of the cyclic
/// shift on `F_2^3` along `(1,1,0)`.
pub fn shift() -> PartialAction {
    let a = FiniteAlgebra::split_semisimple(f2(), 2);
    build(
        a,
        FiniteGroup::cyclic(3),
        vec![el(&[1, 1]), el(&[0, 1]), el(&[1, 0])],
        vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[0, 0], &[1, 0]]), mat(&[&[0, 1], &[0, 0]])],
    )
}

/// FIX-NULL: `Z/2` with `e_g = 0`.
pub fn null() -> PartialAction {
    let a = FiniteAlgebra::split_semisimple(f2(), 2);
    build(
        a,
        FiniteGroup::cyclic(2),
        vec![el(&[1, 1]), el(&[0, 0])],
        vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[0, 0], &[0, 0]])],
    )
}

/// FIX-TRIVACT: `Z/2` acting trivially on `F_2 x F_2`; valid but not Galois.
pub fn trivial_action() -> PartialAction {
    let a = FiniteAlgebra::split_semisimple(f2(), 2);
    build(
        a,
        FiniteGroup::cyclic(2),
        vec![el(&[1, 1]), el(&[1, 1])],
        vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[1, 0], &[0, 1]])],
    )
}

pub fn by_name(name: &str) -> Option<PartialAction> {
    match name {
        "triv" => Some(trivial()),
        "swap" => Some(swap()),
        "shift" => Some(shift()),
        "null" => Some(null()),
        "trivact" => Some(trivial_action()),
        _ => None,
    }
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().map(|&name| Fixture { name, pa: by_name(name).expect("known fixture") }).collect()
}

/// The cyclic shift `delta_i -> delta_{i+1}` of `Z/3` on `F_2^3`.
pub fn cyclic_shift_global() -> GlobalActionInstance {
    let f = f2();
    let s = FiniteAlgebra::split_semisimple(f, 3);
    let mut shift = Matrix::zeros(f, 3, 3);
    for i in 0..3 {
        shift[((i + 1) % 3, i)] = 1;
    }
    let auto = vec![Matrix::identity(f, 3), shift.clone(), shift.mul(&shift)];
    GlobalActionInstance::new(s, FiniteGroup::cyclic(3), auto).expect("shift instance is well formed")
}

//! Shipped affine triples.

use crate::cartan::CartanTriple;

fn build(c: Vec<Vec<i64>>, d: Vec<i64>, omega: &[(usize, usize)]) -> CartanTriple {
    let (t, labels) = CartanTriple::validate(c, d, omega).expect("fixture is valid");
    debug_assert!(labels.iter().enumerate().all(|(i, &l)| i == l));
    t
}

/// Type B~3 with D = diag(1,2,2,1) and the linear orientation 4 -> 3 -> 2 -> 1.
pub fn b3tilde() -> CartanTriple {
    build(
        vec![vec![2, -2, 0, 0], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![0, 0, -2, 2]],
        vec![1, 2, 2, 1],
        &[(2, 3), (1, 2), (0, 1)],
    )
}

/// The Kronecker type [[2,-2],[-2,2]].
pub fn kronecker() -> CartanTriple {
    build(vec![vec![2, -2], vec![-2, 2]], vec![1, 1], &[(0, 1)])
}

/// Twisted rank two type [[2,-1],[-4,2]] with D = diag(4,1).
pub fn twisted_a2() -> CartanTriple {
    build(vec![vec![2, -1], vec![-4, 2]], vec![4, 1], &[(0, 1)])
}

/// Type A~2 (a triangle) with arrows 3 -> 2 -> 1 and 3 -> 1.
pub fn a2tilde() -> CartanTriple {
    build(
        vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
        vec![1, 1, 1],
        &[(0, 1), (1, 2), (0, 2)],
    )
}

/// Type C~2 with D = diag(2,1,2) and orientation 3 -> 2 -> 1.
pub fn c2tilde() -> CartanTriple {
    build(
        vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]],
        vec![2, 1, 2],
        &[(0, 1), (1, 2)],
    )
}

pub fn by_name(name: &str) -> Option<CartanTriple> {
    match name {
        "b3tilde" => Some(b3tilde()),
        "kronecker" => Some(kronecker()),
        "twisted-a2" => Some(twisted_a2()),
        "a2tilde" => Some(a2tilde()),
        "c2tilde" => Some(c2tilde()),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["b3tilde", "kronecker", "twisted-a2", "a2tilde", "c2tilde"];

pub fn all() -> Vec<(&'static str, CartanTriple)> {
    NAMES.iter().map(|&n| (n, by_name(n).unwrap())).collect()
}

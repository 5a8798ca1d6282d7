#![allow(dead_code)]

use exactcat_core::algebra::{Algebra, AlgebraSpec, Hom, Module};
use exactcat_core::ext::ShortExactSequence;
use exactcat_core::linalg::Field;
use exactcat_core::Category;

pub fn linear(p: u32, n: usize) -> Category {
    Category::build(Algebra::linear(Field::new(p).unwrap(), n).unwrap(), n, 1 << 24).unwrap()
}

pub fn from_toml(text: &str) -> Category {
    let spec = AlgebraSpec::from_toml(text).unwrap();
    let alg = Algebra::from_spec(&spec).unwrap();
    Category::build(alg, spec.bounds.dim, 1 << 24).unwrap()
}

/// Linear A_3 with the composite of its two arrows set to zero.
pub fn a3_radical_square_zero() -> Category {
    from_toml("relations = [\"a*b\"]\n[field]\np = 2\n[quiver]\nvertices = 3\narrows = [[0,1],[1,2]]\n[bounds]\ndim = 3\n")
}

pub fn testbeds() -> Vec<(&'static str, Category)> {
    vec![
        ("A2/F2", linear(2, 2)),
        ("A3/F2", linear(2, 3)),
        ("A3 rad^2=0/F2", a3_radical_square_zero()),
        ("A2/F3", linear(3, 2)),
    ]
}

/// `s1 ⊕ s2` with the obvious block maps.
pub fn direct_sum(cat: &Category, s1: &ShortExactSequence, s2: &ShortExactSequence) -> ShortExactSequence {
    let alg = &cat.alg;
    let l = alg.direct_sum(&[&s1.left, &s2.left]);
    let m = alg.direct_sum(&[&s1.mid, &s2.mid]);
    let r = alg.direct_sum(&[&s1.right, &s2.right]);
    let i = m.inclusions[0].after(&s1.i).after(&l.projections[0]).add(&m.inclusions[1].after(&s2.i).after(&l.projections[1]));
    let p = r.inclusions[0].after(&s1.p).after(&m.projections[0]).add(&r.inclusions[1].after(&s2.p).after(&m.projections[1]));
    ShortExactSequence { left: l.module, mid: m.module, right: r.module, i, p }
}

pub fn sum_module(cat: &Category, parts: &[usize]) -> Module {
    let mods: Vec<&Module> = parts.iter().map(|&i| cat.module(i)).collect();
    cat.alg.direct_sum(&mods).module
}

/// Diagonal `X -> X ⊕ X`.
pub fn diagonal(cat: &Category, x: &Module) -> (Module, Hom) {
    let s = cat.alg.direct_sum(&[x, x]);
    let d = s.inclusions[0].add(&s.inclusions[1]);
    (s.module, d)
}

/// Codiagonal `X ⊕ X -> X`.
pub fn codiagonal(cat: &Category, x: &Module) -> (Module, Hom) {
    let s = cat.alg.direct_sum(&[x, x]);
    let c = s.projections[0].add(&s.projections[1]);
    (s.module, c)
}

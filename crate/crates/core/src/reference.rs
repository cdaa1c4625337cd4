//! Embedded reference data: printed modular data, solver tables and
//! condensation tables used as acceptance targets.

#![allow(clippy::approx_constant)]

use crate::abelian::{cis_turn, GroupSpec, QuadraticForm, Q};
use crate::error::{Error, Result};
use crate::modular::{CMat, ModularData, SimpleLabel};
use crate::quadratic::QuadIrr;
use num_complex::Complex64;

fn qi(p: i64, q: i64, m: i64) -> QuadIrr {
    QuadIrr::new(Q::from_integer(p), Q::from_integer(q), m)
}

fn build(
    name: &str,
    labels: &[&str],
    dims: Vec<QuadIrr>,
    s: Vec<Complex64>,
    t_turns: &[Q],
) -> ModularData {
    let r = labels.len();
    assert_eq!(s.len(), r * r);
    let mut md = ModularData {
        name: name.to_string(),
        labels: labels
            .iter()
            .map(|l| SimpleLabel::Named(l.to_string()))
            .collect(),
        dims: dims.iter().map(|d| d.to_f64()).collect(),
        dims_exact: dims.into_iter().map(Some).collect(),
        s: CMat::from_row_slice(r, r, &s),
        t: t_turns.iter().map(|&q| cis_turn(q)).collect(),
        t_turns: t_turns.iter().map(|&q| Some(q)).collect(),
    };
    md.name = name.to_string();
    md
}

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn turns(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(a, b)| Q::new(a, b)).collect()
}

/// Rank-10 modular data of dimension `80(2+√5)²`, with the `s = -1+2i` blocks.
pub fn rank10_reference() -> ModularData {
    let x = qi(5, 2, 5).to_f64();
    let y = qi(8, 4, 5).to_f64();
    let z = qi(9, 4, 5).to_f64();
    let w = qi(-6, -2, 5).to_f64();
    let v = qi(14, 6, 5).to_f64();
    let c = |a: f64, b: f64| Complex64::new(a, b);
    let s = c(-1.0, 2.0) * x;
    let sb = s.conj();
    let (xr, mx, x3, o) = (c(x, 0.0), c(-x, 0.0), c(3.0 * x, 0.0), c(0.0, 0.0));
    let (yr, my) = (c(y, 0.0), c(-y, 0.0));
    #[rustfmt::skip]
    let m = vec![
        c(1.0, 0.0), xr, xr, xr, xr, xr, xr, yr, yr, c(z, 0.0),
        xr, x3, mx, mx, mx, mx, mx, o, o, xr,
        xr, mx, x3, mx, mx, mx, mx, o, o, xr,
        xr, mx, mx, s, sb, xr, xr, o, o, xr,
        xr, mx, mx, sb, s, xr, xr, o, o, xr,
        xr, mx, mx, xr, xr, sb, s, o, o, xr,
        xr, mx, mx, xr, xr, s, sb, o, o, xr,
        yr, o, o, o, o, o, o, c(w, 0.0), c(v, 0.0), my,
        yr, o, o, o, o, o, o, c(v, 0.0), c(w, 0.0), my,
        c(z, 0.0), xr, xr, xr, xr, xr, xr, my, my, c(1.0, 0.0),
    ];
    let dx = qi(5, 2, 5);
    let dims = vec![
        QuadIrr::int(1),
        dx,
        dx,
        dx,
        dx,
        dx,
        dx,
        qi(8, 4, 5),
        qi(8, 4, 5),
        qi(9, 4, 5),
    ];
    let t = turns(&[
        (0, 1),
        (0, 1),
        (0, 1),
        (1, 4),
        (1, 4),
        (3, 4),
        (3, 4),
        (2, 5),
        (3, 5),
        (0, 1),
    ]);
    let labels = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"];
    build("rank10_reference", &labels, dims, m, &t)
}

/// Rank-9 factor of the `ℤ/8` condensation exactly as printed. Its two
/// `χ₆³`-rows carry `u₁` on the diagonal, which makes the matrix non-unitary.
pub fn rank9_printed_reference() -> ModularData {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let a = qi(5, 2, 6).to_f64();
    let b = qi(6, 2, 6).to_f64();
    let c = qi(3, 1, 6).to_f64();
    let e = qi(4, 2, 6).to_f64();
    let f = qi(2, 1, 6).to_f64();
    let u1 = (1.0 + r2) * c;
    let u2 = (1.0 - r2) * c;
    let u3 = r2 * c;
    let u5 = (1.0 + r3) * f;
    let u6 = (1.0 - r3) * f;
    #[rustfmt::skip]
    let m = real(&[
        1.0, a, b, c, c, e, e, f, f,
        a, 1.0, b, c, c, -e, -e, -f, -f,
        b, b, 0.0, -b, -b, 0.0, 0.0, 0.0, 0.0,
        c, c, -b, u1, u2, 0.0, 0.0, u3, -u3,
        c, c, -b, u2, u1, 0.0, 0.0, -u3, u3,
        e, -e, 0.0, 0.0, 0.0, -e, e, e, e,
        e, -e, 0.0, 0.0, 0.0, e, e, -e, -e,
        f, -f, 0.0, u3, -u3, e, -e, u5, u6,
        f, -f, 0.0, -u3, u3, e, -e, u6, u5,
    ]);
    let dims = vec![
        QuadIrr::int(1),
        qi(5, 2, 6),
        qi(6, 2, 6),
        qi(3, 1, 6),
        qi(3, 1, 6),
        qi(4, 2, 6),
        qi(4, 2, 6),
        qi(2, 1, 6),
        qi(2, 1, 6),
    ];
    let t = turns(&[
        (0, 1),
        (0, 1),
        (1, 8),
        (1, 2),
        (1, 2),
        (5, 12),
        (2, 3),
        (3, 4),
        (3, 4),
    ]);
    let labels = [
        "F(1)", "F(B0)", "F(C1,7)", "(C2,6)_1", "(C2,6)_2", "F(W2)", "F(W4)", "(W1)_1", "(W1)_2",
    ];
    build("rank9_printed_reference", &labels, dims, m, &t)
}

/// Modular data of `G₂` at level 4.
pub fn g2_level4_reference() -> ModularData {
    let r2 = 2f64.sqrt();
    let a = qi(5, 2, 6).to_f64();
    let c = qi(3, 1, 6).to_f64();
    let f = qi(2, 1, 6).to_f64();
    let (f2, c2) = (2.0 * f, 2.0 * c);
    let x3 = (1.0 + 3f64.sqrt()) * f;
    let y3 = (1.0 - 3f64.sqrt()) * f;
    let x2 = (1.0 + r2) * c;
    let y2 = (1.0 - r2) * c;
    let q = r2 * c;
    #[rustfmt::skip]
    let m = real(&[
        1.0, f, c, f2, c2, f, a, f2, c,
        f, x3, q, f2, 0.0, y3, -f, -f2, -q,
        c, q, y2, 0.0, -c2, -q, c, 0.0, x2,
        f2, f2, 0.0, -f2, 0.0, f2, -f2, f2, 0.0,
        c2, 0.0, -c2, 0.0, 0.0, 0.0, c2, 0.0, -c2,
        f, y3, -q, f2, 0.0, x3, -f, -f2, q,
        a, -f, c, -f2, c2, -f, 1.0, -f2, c,
        f2, -f2, 0.0, f2, 0.0, -f2, -f2, f2, 0.0,
        c, -q, x2, 0.0, -c2, q, c, 0.0, y2,
    ]);
    let dims = vec![
        QuadIrr::int(1),
        qi(2, 1, 6),
        qi(3, 1, 6),
        qi(4, 2, 6),
        qi(6, 2, 6),
        qi(2, 1, 6),
        qi(5, 2, 6),
        qi(4, 2, 6),
        qi(3, 1, 6),
    ];
    let t = turns(&[
        (0, 1),
        (1, 4),
        (1, 2),
        (7, 12),
        (7, 8),
        (1, 4),
        (0, 1),
        (1, 3),
        (1, 2),
    ]);
    let labels = [
        "(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)", "(3,0)", "(2,1)", "(4,0)",
    ];
    build("g2_level4_reference", &labels, dims, m, &t)
}

/// Embedded modular data by name.
pub fn by_name(name: &str) -> Result<ModularData> {
    match name {
        "rank10" => Ok(rank10_reference()),
        "rank9-printed" => Ok(rank9_printed_reference()),
        "g2-level4" => Ok(g2_level4_reference()),
        _ => Err(Error::InvalidInput(format!(
            "unknown reference {name:?}; known: rank10, rank9-printed, g2-level4"
        ))),
    }
}

/// Elements of `ℤ/4×ℤ/4` carrying the phase columns of
/// [`z4z4_b_phase_rows`], as `(g₁, g₂)`.
pub const Z4Z4_PHASE_ELEMENTS: [(i64, i64); 9] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
];

/// Phases `j(x)` with `b(x) = exp(i j(x))/4` of the four solutions `J₁..J₄`.
pub fn z4z4_b_phase_rows() -> [[f64; 9]; 4] {
    [
        [
            1.99103, 1.57080, -1.99103, 0.0, -2.44331, -2.23704, -1.57080, 2.44331, 0.0,
        ],
        [
            1.99103, 1.57080, -0.36516, 2.23704, -3.05447, 0.0, -1.57080, 2.44331, 0.0,
        ],
        [
            0.36516, 1.57080, -0.36516, 0.0, -3.05447, 2.23704, -1.57080, 3.05447, 0.0,
        ],
        [
            0.36516, 1.57080, -1.99103, -2.23704, -2.44331, 0.0, -1.57080, 3.05447, 0.0,
        ],
    ]
}

/// The four quadratic forms `a₁..a₄` on `ℤ/4×ℤ/4` for the pairing
/// `i^{g₁h₁-g₂h₂}`, as phases in units of `π`.
pub fn z4z4_forms_reference() -> [QuadraticForm; 4] {
    let spec = GroupSpec::new(vec![4, 4]).expect("valid group");
    let mk = |p: i64, q: i64| QuadraticForm {
        phases: spec
            .elements()
            .iter()
            .map(|e| {
                let (g1, g2) = (e.residues[0], e.residues[1]);
                crate::abelian::reduce_mod(Q::new(p * g1 * g1 + q * g2 * g2, 4), 2)
            })
            .collect(),
    };
    [mk(3, -3), mk(3, 1), mk(-1, 1), mk(-1, -3)]
}

/// Automorphisms `ψ₁ = (-g₁, g₂)`, `ψ₂ = (-g₁, -g₂)`, `ψ₃ = (g₁, -g₂)` of
/// `ℤ/4×ℤ/4` as index permutations.
pub fn z4z4_psi_reference() -> [Vec<usize>; 3] {
    let perm = |s1: i64, s2: i64| -> Vec<usize> {
        (0..16)
            .map(|i| {
                let (g1, g2) = (i as i64 / 4, i as i64 % 4);
                ((s1 * g1).rem_euclid(4) * 4 + (s2 * g2).rem_euclid(4)) as usize
            })
            .collect()
    };
    [perm(-1, 1), perm(-1, -1), perm(1, -1)]
}

/// 1-based indices of the `χ₈₀⁹` and `χ₈₀¹⁰` labels listed in the
/// centralizer of the order-8 Tannakian subgroup of the `ℤ/4×ℤ/4` center;
/// the `χ₈₀¹⁰` labels are numbered over pairs `k<l` in lexicographic order.
pub fn z4z4_centralizer_reference() -> (Vec<usize>, Vec<usize>) {
    (
        vec![1, 3, 6, 8, 9, 11, 14, 16],
        vec![10, 17, 23, 35, 50, 56, 62, 75, 83, 90, 101, 116],
    )
}

/// A row of the `ℤ/8+8` solution table: pairing `m`, `c` in turns and
/// `j(1..4)`.
#[derive(Clone, Debug)]
pub struct Z8Row {
    pub id: &'static str,
    pub m: i64,
    pub c_turns: Q,
    pub j: [f64; 4],
}

pub fn z8_b_phase_rows() -> Vec<Z8Row> {
    let row = |id, m, c: (i64, i64), j| Z8Row {
        id,
        m,
        c_turns: crate::abelian::reduce_mod(Q::new(c.0, c.1), 1),
        j,
    };
    vec![
        row("J8_1", -1, (-1, 24), [0.872276, -2.70426, 2.9768, 3.14159]),
        row(
            "J8_1bar",
            1,
            (1, 24),
            [-0.872276, 2.70426, -2.9768, 3.14159],
        ),
        row(
            "J8_2",
            -1,
            (-1, 24),
            [-1.26498, 1.13347, -0.227903, 3.14159],
        ),
        row(
            "J8_2bar",
            1,
            (1, 24),
            [1.26498, -1.13347, 0.227903, 3.14159],
        ),
        row("J8_3", -3, (17, 24), [-2.46405, 3.07557, 0.491887, 0.0]),
        row("J8_3bar", 3, (-17, 24), [2.46405, -3.07557, -0.491887, 0.0]),
        row("J8_4", -3, (17, 24), [1.28595, -1.50478, 1.47161, 0.0]),
        row("J8_4bar", 3, (-17, 24), [-1.28595, 1.50478, -1.47161, 0.0]),
    ]
}

/// Half-braiding triples of the `J₈¹` category: `(k, τ, ξ phases)` with
/// `ω² = ζ₄₈^k`.
pub fn z8_triples_reference() -> Vec<(i64, usize, [f64; 8])> {
    vec![
        (
            24,
            0,
            [
                1.8326, 0.840155, -2.87979, -2.67275, 1.8326, 0.840155, -2.87979, -2.67275,
            ],
        ),
        (
            40,
            0,
            [
                -2.35619, -2.03783, -2.19092, 2.32649, -2.35619, 0.0297022, 0.620122, -1.88916,
            ],
        ),
        (
            40,
            0,
            [
                -2.35619, 0.0297022, 0.620122, -1.88916, -2.35619, -2.03783, -2.19092, 2.32649,
            ],
        ),
        (
            16,
            0,
            [
                -1.5708, 1.76553, -1.06745, 0.914113, 1.5708, 3.01288, 1.06745, 2.16146,
            ],
        ),
        (
            16,
            0,
            [
                1.5708, 3.01288, 1.06745, 2.16146, -1.5708, 1.76553, -1.06745, 0.914113,
            ],
        ),
        (
            39,
            1,
            [
                2.86523, -0.967181, -2.38552, -2.68973, 0.113755, -1.3573, 3.01698, -0.428819,
            ],
        ),
        (
            39,
            1,
            [
                0.113755, -1.3573, 3.01698, -0.428819, 2.86523, -0.967181, -2.38552, -2.68973,
            ],
        ),
        (
            7,
            1,
            [
                -0.960866, 0.764517, 0.941698, 2.72147, -2.6727, -0.665243, 1.79457, 0.432749,
            ],
        ),
        (
            7,
            1,
            [
                0.7022, -0.89855, -0.94287, -2.38689, 0.955559, 1.98968, 0.619742, 2.31732,
            ],
        ),
        (
            7,
            1,
            [
                -2.6727, -0.665243, 1.79457, 0.432749, -0.960866, 0.764517, 0.941698, 2.72147,
            ],
        ),
        (
            7,
            1,
            [
                0.955559, 1.98968, 0.619742, 2.31732, 0.7022, -0.89855, -0.94287, -2.38689,
            ],
        ),
        (
            12,
            2,
            [
                -2.67275, 1.8326, 0.840155, -2.87979, -2.67275, 1.8326, 0.840155, -2.87979,
            ],
        ),
        (
            28,
            2,
            [
                2.32649, -2.35619, 0.0297022, 0.620122, -1.88916, -2.35619, -2.03783, -2.19092,
            ],
        ),
        (
            28,
            2,
            [
                -1.88916, -2.35619, -2.03783, -2.19092, 2.32649, -2.35619, 0.0297022, 0.620122,
            ],
        ),
        (
            4,
            2,
            [
                2.16146, -1.5708, 1.76553, -1.06745, 0.914113, 1.5708, 3.01288, 1.06745,
            ],
        ),
        (
            4,
            2,
            [
                0.914113, 1.5708, 3.01288, 1.06745, 2.16146, -1.5708, 1.76553, -1.06745,
            ],
        ),
        (
            15,
            3,
            [
                -0.428819, 2.86523, -0.967181, -2.38552, -2.68973, 0.113755, -1.3573, 3.01698,
            ],
        ),
        (
            15,
            3,
            [
                -2.68973, 0.113755, -1.3573, 3.01698, -0.428819, 2.86523, -0.967181, -2.38552,
            ],
        ),
        (
            31,
            3,
            [
                2.72147, -2.6727, -0.665243, 1.79457, 0.432749, -0.960866, 0.764517, 0.941698,
            ],
        ),
        (
            31,
            3,
            [
                -2.38689, 0.955559, 1.98968, 0.619742, 2.31732, 0.7022, -0.89855, -0.94287,
            ],
        ),
        (
            31,
            3,
            [
                2.31732, 0.7022, -0.89855, -0.94287, -2.38689, 0.955559, 1.98968, 0.619742,
            ],
        ),
        (
            31,
            3,
            [
                0.432749, -0.960866, 0.764517, 0.941698, 2.72147, -2.6727, -0.665243, 1.79457,
            ],
        ),
        (
            24,
            4,
            [
                -2.87979, -2.67275, 1.8326, 0.840155, -2.87979, -2.67275, 1.8326, 0.840155,
            ],
        ),
        (
            16,
            4,
            [
                1.06745, 2.16146, -1.5708, 1.76553, -1.06745, 0.914113, 1.5708, 3.01288,
            ],
        ),
        (
            16,
            4,
            [
                -1.06745, 0.914113, 1.5708, 3.01288, 1.06745, 2.16146, -1.5708, 1.76553,
            ],
        ),
        (
            40,
            4,
            [
                -2.19092, 2.32649, -2.35619, 0.0297022, 0.620122, -1.88916, -2.35619, -2.03783,
            ],
        ),
        (
            40,
            4,
            [
                0.620122, -1.88916, -2.35619, -2.03783, -2.19092, 2.32649, -2.35619, 0.0297022,
            ],
        ),
        (
            15,
            5,
            [
                -2.38552, -2.68973, 0.113755, -1.3573, 3.01698, -0.428819, 2.86523, -0.967181,
            ],
        ),
        (
            15,
            5,
            [
                3.01698, -0.428819, 2.86523, -0.967181, -2.38552, -2.68973, 0.113755, -1.3573,
            ],
        ),
        (
            31,
            5,
            [
                1.79457, 0.432749, -0.960866, 0.764517, 0.941698, 2.72147, -2.6727, -0.665243,
            ],
        ),
        (
            31,
            5,
            [
                0.619742, 2.31732, 0.7022, -0.89855, -0.94287, -2.38689, 0.955559, 1.98968,
            ],
        ),
        (
            31,
            5,
            [
                -0.94287, -2.38689, 0.955559, 1.98968, 0.619742, 2.31732, 0.7022, -0.89855,
            ],
        ),
        (
            31,
            5,
            [
                0.941698, 2.72147, -2.6727, -0.665243, 1.79457, 0.432749, -0.960866, 0.764517,
            ],
        ),
        (
            12,
            6,
            [
                0.840155, -2.87979, -2.67275, 1.8326, 0.840155, -2.87979, -2.67275, 1.8326,
            ],
        ),
        (
            28,
            6,
            [
                -2.03783, -2.19092, 2.32649, -2.35619, 0.0297022, 0.620122, -1.88916, -2.35619,
            ],
        ),
        (
            28,
            6,
            [
                0.0297022, 0.620122, -1.88916, -2.35619, -2.03783, -2.19092, 2.32649, -2.35619,
            ],
        ),
        (
            4,
            6,
            [
                3.01288, 1.06745, 2.16146, -1.5708, 1.76553, -1.06745, 0.914113, 1.5708,
            ],
        ),
        (
            4,
            6,
            [
                1.76553, -1.06745, 0.914113, 1.5708, 3.01288, 1.06745, 2.16146, -1.5708,
            ],
        ),
        (
            39,
            7,
            [
                -0.967181, -2.38552, -2.68973, 0.113755, -1.3573, 3.01698, -0.428819, 2.86523,
            ],
        ),
        (
            39,
            7,
            [
                -1.3573, 3.01698, -0.428819, 2.86523, -0.967181, -2.38552, -2.68973, 0.113755,
            ],
        ),
        (
            7,
            7,
            [
                -0.89855, -0.94287, -2.38689, 0.955559, 1.98968, 0.619742, 2.31732, 0.7022,
            ],
        ),
        (
            7,
            7,
            [
                0.764517, 0.941698, 2.72147, -2.6727, -0.665243, 1.79457, 0.432749, -0.960866,
            ],
        ),
        (
            7,
            7,
            [
                1.98968, 0.619742, 2.31732, 0.7022, -0.89855, -0.94287, -2.38689, 0.955559,
            ],
        ),
        (
            7,
            7,
            [
                -0.665243, 1.79457, 0.432749, -0.960866, 0.764517, 0.941698, 2.72147, -2.6727,
            ],
        ),
    ]
}

/// Twists `ω` of the 44 `d`-dimensional labels of the `J₈¹` center, in
/// the order of [`z8_triples_reference`], as multiples of `π`.
pub fn z8_w_twists_reference() -> Vec<Q> {
    turns(&[
        (-1, 2),
        (5, 6),
        (5, 6),
        (-2, 3),
        (-2, 3),
        (13, 16),
        (-3, 16),
        (7, 48),
        (7, 48),
        (-41, 48),
        (-41, 48),
        (-3, 4),
        (7, 12),
        (7, 12),
        (-11, 12),
        (-11, 12),
        (5, 16),
        (-11, 16),
        (31, 48),
        (31, 48),
        (-17, 48),
        (-17, 48),
        (1, 2),
        (1, 3),
        (1, 3),
        (-1, 6),
        (-1, 6),
        (5, 16),
        (-11, 16),
        (31, 48),
        (31, 48),
        (-17, 48),
        (-17, 48),
        (-3, 4),
        (7, 12),
        (7, 12),
        (-11, 12),
        (-11, 12),
        (13, 16),
        (-3, 16),
        (7, 48),
        (7, 48),
        (-41, 48),
        (-41, 48),
    ])
}

/// Action of the boson `X₄` on the `C(k,l)` labels of the `ℤ/8` center,
/// `k<l`, with the result normalized to `k'<l'`.
pub fn z8_boson_on_pair(k: i64, l: i64) -> (i64, i64) {
    let lp = if k < 4 && l >= 4 {
        k + 4
    } else if k < 4 {
        l + 4
    } else {
        l - 4
    };
    let kp = (k + l - lp).rem_euclid(8);
    (kp.min(lp), kp.max(lp))
}

/// Boson action on the 1-based `d`-dimensional labels of the `ℤ/8` center:
/// `(i, j, centralized)` meaning `X₄ ⊗ W_i = W_j`.
pub fn z8_boson_on_w() -> Vec<(usize, usize, bool)> {
    let mut v = Vec::new();
    for i in [1, 12, 23, 34] {
        v.push((i, i, true));
    }
    for i in [2, 4, 13, 15, 24, 26, 35, 37] {
        v.push((i, i + 1, true));
    }
    for i in [6, 17, 20, 28, 31, 39] {
        v.push((i, i + 1, false));
    }
    for i in [8, 9, 41, 42] {
        v.push((i, i + 2, false));
    }
    for i in [19, 30] {
        v.push((i, i + 3, false));
    }
    v
}

/// Labels, dimensions and twists (turns) of the rank-36 condensation of the
/// `ℤ/8` center, as printed.
pub fn z8_condensed_reference() -> Vec<(&'static str, QuadIrr, Q)> {
    let one = QuadIrr::int(1);
    let y = qi(5, 2, 6);
    let z = qi(6, 2, 6);
    let zh = qi(3, 1, 6);
    let w = qi(4, 2, 6);
    let wh = qi(2, 1, 6);
    let e = |a, b| Q::new(a, b);
    let mut v = vec![
        ("F(X0)", one, e(0, 1)),
        ("F(X1)", one, e(7, 8)),
        ("F(X2)", one, e(1, 2)),
        ("F(X3)", one, e(7, 8)),
        ("F(Y0)", y, e(0, 1)),
        ("F(Y1)", y, e(7, 8)),
        ("F(Y2)", y, e(1, 2)),
        ("F(Y3)", y, e(7, 8)),
        ("F(Z0,2)", z, e(0, 1)),
        ("F(Z0,6)", z, e(0, 1)),
        ("F(Z1,3)", z, e(5, 8)),
        ("F(Z1,7)", z, e(1, 8)),
    ];
    for (n, t) in [
        ("Z0,4", e(0, 1)),
        ("Z1,5", e(3, 8)),
        ("Z2,6", e(1, 2)),
        ("Z3,7", e(3, 8)),
    ] {
        v.push((leak(format!("({n})_1")), zh, t));
        v.push((leak(format!("({n})_2")), zh, t));
    }
    for (n, t) in [
        ("W2", e(5, 12)),
        ("W4", e(2, 3)),
        ("W13", e(7, 24)),
        ("W15", e(13, 24)),
        ("W24", e(1, 6)),
        ("W26", e(11, 12)),
        ("W35", e(7, 24)),
        ("W37", e(13, 24)),
    ] {
        v.push((leak(format!("F({n})")), w, t));
    }
    for (n, t) in [
        ("W1", e(3, 4)),
        ("W12", e(5, 8)),
        ("W23", e(1, 4)),
        ("W34", e(1, 6)),
    ] {
        v.push((leak(format!("({n})_1")), wh, t));
        v.push((leak(format!("({n})_2")), wh, t));
    }
    v
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}

/// Labels of the adjoint subcategory of `sl₃` at level 5.
pub const SL3_LEVEL5_ADJOINT_LABELS: [(i64, i64); 7] =
    [(0, 0), (0, 3), (3, 0), (1, 1), (2, 2), (1, 4), (4, 1)];

//! Evaluation of bond-incident-degree indices `Σ φ(d_u, d_v)` over the
//! edges of a graph, with an exact rational fast path, plus the
//! molecular-tree decomposition of the HA index.

use thiserror::Error;

use crate::dsl::{self, classify, parse_phi, EvalError, ExactnessClass, PhiExpr};
use crate::graph::SimpleGraph;
use crate::scalar::{rat, ExactScalar};
use crate::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum IndexError {
    #[error("vertex {0} is isolated; indices are defined only for graphs without isolated vertices (or n = 1)")]
    IsolatedVertex(usize),
    #[error("not a molecular tree: {0}")]
    NotMolecularTree(String),
    #[error("unknown builtin index {0:?}; known: {}", BUILTINS.iter().map(|b| b.0).collect::<Vec<_>>().join(", "))]
    UnknownBuiltin(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Multiplier applied to the edge sum. Irrational scale constants are kept
/// symbolic so the rational path stays exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Scale {
    Rational(Rational),
    Sqrt2,
}

impl Scale {
    pub fn one() -> Self {
        Scale::Rational(rat(1, 1))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Scale::Rational(r) => ExactScalar::Rational(r.clone()).to_f64(),
            Scale::Sqrt2 => std::f64::consts::SQRT_2,
        }
    }
}

/// Builtin table: name, per-edge weight expression, final scale.
const BUILTINS: &[(&str, &str, bool)] = &[
    // (name, phi, scale_is_sqrt2)
    ("HA", "H/A", false),
    ("GA", "G/A", false),
    ("AG", "A/G", false),
    ("SDD", "4*(A/H) - 2", false),
    ("ISI", "H/2", false),
    ("M1half", "A", false),
    ("reciprocalRandic", "G", false),
    ("Sombor", "Q", true),
    ("SO3", "C", true),
    ("modifiedSDD", "Q/G", false),
];

/// A named index: a per-edge weight `φ` and a scale applied to the sum.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexSpec {
    pub name: String,
    pub phi: PhiExpr,
    pub scale: Scale,
}

impl IndexSpec {
    pub fn builtin(name: &str) -> Result<Self, IndexError> {
        let (n, phi, sqrt2) = BUILTINS
            .iter()
            .find(|(n, _, _)| *n == name)
            .ok_or_else(|| IndexError::UnknownBuiltin(name.to_string()))?;
        Ok(IndexSpec {
            name: n.to_string(),
            phi: parse_phi(phi).expect("builtin expressions parse"),
            scale: if *sqrt2 { Scale::Sqrt2 } else { Scale::one() },
        })
    }

    /// Wraps a user expression as an unscaled index named by its printed
    /// form.
    pub fn from_phi(phi: PhiExpr) -> Self {
        IndexSpec {
            name: phi.to_string(),
            phi,
            scale: Scale::one(),
        }
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTINS.iter().map(|(n, _, _)| *n)
    }

    /// Exact iff the expression is exact-rational and the scale is
    /// rational.
    pub fn is_exact(&self) -> bool {
        classify(&self.phi) == ExactnessClass::ExactRational
            && matches!(self.scale, Scale::Rational(_))
    }
}

fn check_no_isolated(g: &SimpleGraph) -> Result<(), IndexError> {
    if g.order() >= 2 {
        for v in 0..g.order() {
            if g.degree(v) == 0 {
                return Err(IndexError::IsolatedVertex(v));
            }
        }
    }
    Ok(())
}

/// `Σ_{uv ∈ E} φ(d_u, d_v)`, times the scale. Exact rational whenever the
/// spec is exact; the edgeless graph gives 0 by the empty-sum convention.
pub fn evaluate_index(g: &SimpleGraph, spec: &IndexSpec) -> Result<ExactScalar, IndexError> {
    check_no_isolated(g)?;
    let partition = g.edge_partition();
    if spec.is_exact() {
        let mut sum = Rational::from_integer(0.into());
        for ((s, t), m) in partition.iter() {
            let w = dsl::eval_scalar::<Rational>(&spec.phi, s as u32, t as u32)?;
            sum += w * Rational::from_integer(m.into());
        }
        let Scale::Rational(ref scale) = spec.scale else {
            unreachable!("is_exact checked the scale");
        };
        Ok(ExactScalar::Rational(sum * scale))
    } else {
        let mut sum = 0.0f64;
        for ((s, t), m) in partition.iter() {
            let w = dsl::eval_scalar::<f64>(&spec.phi, s as u32, t as u32)?;
            sum += w * m as f64;
        }
        Ok(ExactScalar::Float(sum * spec.scale.as_f64()))
    }
}

/// Per-edge HA weight `4ab/(a+b)²` in lowest terms; equals `Φ(a/b)` where
/// `Φ(x) = 4x/(x+1)²`.
pub fn phi_ha(a: usize, b: usize) -> Rational {
    assert!(a >= 1 && b >= 1, "degrees must be positive");
    let (a, b) = (a as i64, b as i64);
    rat(4 * a * b, (a + b) * (a + b))
}

/// `Φ(x) = 4x/(x+1)²`, evaluated exactly.
pub fn phi_of(x: &Rational) -> Rational {
    let one = Rational::from_integer(1.into());
    let four = Rational::from_integer(4.into());
    let xp1 = x + &one;
    four * x / (&xp1 * &xp1)
}

/// The HA index `Σ 4 d_u d_v / (d_u + d_v)²`, always exact.
pub fn ha_index(g: &SimpleGraph) -> Rational {
    let mut sum = Rational::from_integer(0.into());
    for ((s, t), m) in g.edge_partition().iter() {
        sum += phi_ha(s, t) * Rational::from_integer(m.into());
    }
    sum
}

fn require_molecular_tree(t: &SimpleGraph) -> Result<(), IndexError> {
    if !t.is_tree() {
        return Err(IndexError::NotMolecularTree("not a tree".into()));
    }
    if t.order() < 2 {
        return Err(IndexError::NotMolecularTree(
            "order must be at least 2".into(),
        ));
    }
    let max_deg = (0..t.order()).map(|v| t.degree(v)).max().unwrap_or(0);
    if max_deg > 4 {
        return Err(IndexError::NotMolecularTree(format!(
            "maximum degree {max_deg} exceeds 4"
        )));
    }
    Ok(())
}

/// The non-constant part of HA for a molecular tree: the exact linear
/// combination of edge-partition counts left after eliminating `m_{1,4}`
/// and `m_{4,4}` through the degree/edge linear system.
///
/// The `m_{1,1}` term only matters for `n = 2` (a lone edge); it vanishes
/// on every larger tree and completes the identity
/// `HA(T) = (19n - 31)/25 + Γ(T)` down to `n = 2`.
pub fn gamma_ha(t: &SimpleGraph) -> Result<Rational, IndexError> {
    require_molecular_tree(t)?;
    const COEFFS: &[((usize, usize), (i64, i64))] = &[
        ((1, 1), (18, 25)),
        ((1, 2), (83, 225)),
        ((1, 3), (3, 20)),
        ((2, 2), (6, 25)),
        ((2, 3), (3, 25)),
        ((2, 4), (2, 225)),
        ((3, 3), (2, 25)),
        ((3, 4), (24, 1225)),
    ];
    let partition = t.edge_partition();
    let mut sum = Rational::from_integer(0.into());
    for &((s, u), (p, q)) in COEFFS {
        let m = partition.count(s, u);
        if m > 0 {
            sum += rat(p, q) * Rational::from_integer(m.into());
        }
    }
    Ok(sum)
}

/// `HA(T)` through the reduction `(19n - 31)/25 + Γ(T)`; agrees with
/// [`ha_index`] exactly on every molecular tree of order >= 2.
pub fn ha_via_reduction(t: &SimpleGraph) -> Result<Rational, IndexError> {
    let gamma = gamma_ha(t)?;
    let n = t.order() as i64;
    Ok(rat(19 * n - 31, 25) + gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn star(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>()).unwrap()
    }

    fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).unwrap()
    }

    /// The unique HA-minimizing molecular tree on 10 vertices: two degree-4
    /// vertices bridged by a degree-3 vertex that carries one pendant.
    fn fig1c() -> SimpleGraph {
        SimpleGraph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (2, 8),
                (2, 9),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ha_on_stars_and_paths() {
        let spec = IndexSpec::builtin("HA").unwrap();
        assert_eq!(
            evaluate_index(&star(4), &spec).unwrap(),
            ExactScalar::Rational(rat(9, 4))
        );
        assert_eq!(
            evaluate_index(&path(4), &spec).unwrap(),
            ExactScalar::Rational(rat(25, 9))
        );
        let k2 = path(2);
        assert_eq!(
            evaluate_index(&k2, &spec).unwrap(),
            ExactScalar::Rational(rat(1, 1))
        );
    }

    #[test]
    fn ha_on_regular_graphs_counts_edges() {
        let spec = IndexSpec::builtin("HA").unwrap();
        // Cycles and K4 are regular: every edge contributes exactly 1.
        let c5 =
            SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(
            evaluate_index(&c5, &spec).unwrap(),
            ExactScalar::Rational(rat(5, 1))
        );
        let k4 = SimpleGraph::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(
            evaluate_index(&k4, &spec).unwrap(),
            ExactScalar::Rational(rat(6, 1))
        );
    }

    #[test]
    fn ha_index_examples() {
        // Two (1,2)-edges at 8/9 each.
        assert_eq!(ha_index(&path(3)), rat(16, 9));
        // 4(1 - 1/10)² = 81/25, both by formula and by edge sum.
        assert_eq!(ha_index(&star(10)), rat(81, 25));
        let k1 = SimpleGraph::from_edges(1, &[]).unwrap();
        assert_eq!(ha_index(&k1), rat(0, 1));
    }

    #[test]
    fn ha_index_matches_builtin_and_dedicated_path() {
        let spec = IndexSpec::builtin("HA").unwrap();
        for g in [star(7), path(9), fig1c()] {
            assert_eq!(
                evaluate_index(&g, &spec).unwrap(),
                ExactScalar::Rational(ha_index(&g))
            );
        }
    }

    #[test]
    fn phi_ha_examples() {
        assert_eq!(phi_ha(1, 9), rat(9, 25)); // 4·9/100
        assert_eq!(phi_ha(3, 3), rat(1, 1));
        assert_eq!(phi_ha(1, 2), rat(8, 9));
        // phi_ha(a, b) = Φ(a/b).
        for a in 1..=12usize {
            for b in 1..=12usize {
                assert_eq!(phi_ha(a, b), phi_of(&rat(a as i64, b as i64)));
            }
        }
    }

    #[test]
    fn per_edge_bounds() {
        for a in 1..=40usize {
            for b in 1..=40usize {
                let w = phi_ha(a, b);
                assert!(w > rat(0, 1));
                assert!(w <= rat(1, 1));
                assert_eq!(w == rat(1, 1), a == b);
                if a == 1 && b >= 2 {
                    assert!(w <= rat(8, 9));
                    assert_eq!(w == rat(8, 9), b == 2);
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        // P_6: m12 = 2, m22 = 3.
        assert_eq!(gamma_ha(&path(6)).unwrap(), rat(328, 225));
        assert_eq!(gamma_ha(&fig1c()).unwrap(), rat(927, 4900));
        // Only (1,4) and (4,4) edges: Γ = 0. Two adjacent degree-4
        // vertices with three pendants each.
        let t = SimpleGraph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)],
        )
        .unwrap();
        assert_eq!(gamma_ha(&t).unwrap(), rat(0, 1));
    }

    #[test]
    fn fig1c_edge_partition_matches_expected() {
        let part = fig1c().edge_partition();
        assert_eq!(part.count(1, 4), 6);
        assert_eq!(part.count(1, 3), 1);
        assert_eq!(part.count(3, 4), 2);
        assert_eq!(part.total(), 9);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(ha_via_reduction(&path(6)).unwrap(), rat(43, 9));
        assert_eq!(ha_index(&path(6)), rat(43, 9));
        assert_eq!(ha_via_reduction(&star(5)).unwrap(), rat(64, 25));
        assert_eq!(ha_index(&star(5)), rat(64, 25));
        let expected = rat(159, 25) + rat(927, 4900);
        assert_eq!(ha_via_reduction(&fig1c()).unwrap(), expected);
        assert_eq!(ha_index(&fig1c()), expected);
    }

    #[test]
    fn reduction_holds_at_order_two() {
        // K_2 has a single (1,1) edge; the m11 term carries the identity.
        let k2 = path(2);
        assert_eq!(gamma_ha(&k2).unwrap(), rat(18, 25));
        assert_eq!(ha_via_reduction(&k2).unwrap(), rat(1, 1));
        assert_eq!(ha_index(&k2), rat(1, 1));
    }

    #[test]
    fn gamma_rejects_non_molecular_input() {
        assert!(matches!(
            gamma_ha(&star(6)),
            Err(IndexError::NotMolecularTree(_))
        ));
        let triangle = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            gamma_ha(&triangle),
            Err(IndexError::NotMolecularTree(_))
        ));
        let k1 = SimpleGraph::from_edges(1, &[]).unwrap();
        assert!(matches!(
            gamma_ha(&k1),
            Err(IndexError::NotMolecularTree(_))
        ));
    }

    #[test]
    fn isolated_vertices_are_rejected() {
        let g = SimpleGraph::from_edges(3, &[(0, 1)]).unwrap();
        let spec = IndexSpec::builtin("HA").unwrap();
        assert_eq!(
            evaluate_index(&g, &spec),
            Err(IndexError::IsolatedVertex(2))
        );
        let k1 = SimpleGraph::from_edges(1, &[]).unwrap();
        assert_eq!(
            evaluate_index(&k1, &spec).unwrap(),
            ExactScalar::Rational(rat(0, 1))
        );
    }

    #[test]
    fn sdd_builtin_equals_degree_ratio_sum() {
        // 4(A/H) - 2 per edge is d_u/d_v + d_v/d_u.
        let spec = IndexSpec::builtin("SDD").unwrap();
        for g in [path(7), star(6), fig1c()] {
            let direct: Rational = g
                .edges()
                .map(|(u, v)| {
                    let (a, b) = (g.degree(u) as i64, g.degree(v) as i64);
                    rat(a, b) + rat(b, a)
                })
                .sum();
            assert_eq!(
                evaluate_index(&g, &spec).unwrap(),
                ExactScalar::Rational(direct)
            );
        }
    }

    #[test]
    fn zagreb_consistency() {
        // 2 × (Σ A) = Σ_v d_v².
        let spec = IndexSpec::builtin("M1half").unwrap();
        for g in [path(9), star(8), fig1c()] {
            let m1: i64 = (0..g.order()).map(|v| (g.degree(v) as i64).pow(2)).sum();
            let val = evaluate_index(&g, &spec).unwrap();
            assert_eq!(
                val.as_rational().unwrap() * Rational::from_integer(2.into()),
                rat(m1, 1)
            );
        }
    }

    #[test]
    fn sqrt2_scaled_builtins_take_the_float_path() {
        let sombor = IndexSpec::builtin("Sombor").unwrap();
        assert!(!sombor.is_exact());
        let val = evaluate_index(&path(3), &sombor).unwrap();
        // Two (1,2) edges: SO = 2·√(1+4) = 2√5.
        match val {
            ExactScalar::Float(x) => assert!((x - 2.0 * 5f64.sqrt()).abs() < 1e-12),
            other => panic!("expected float, got {other:?}"),
        }
    }

    #[test]
    fn modified_sdd_matches_its_definition() {
        let spec = IndexSpec::builtin("modifiedSDD").unwrap();
        let g = path(4);
        let val = evaluate_index(&g, &spec).unwrap().to_f64();
        let direct: f64 = g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (g.degree(u) as f64, g.degree(v) as f64);
                (0.5 * (a / b + b / a)).sqrt()
            })
            .sum();
        assert!((val - direct).abs() < 1e-12);
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(matches!(
            IndexSpec::builtin("ISDD"),
            Err(IndexError::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn all_builtins_parse() {
        for name in IndexSpec::builtin_names() {
            IndexSpec::builtin(name).unwrap();
        }
    }
}

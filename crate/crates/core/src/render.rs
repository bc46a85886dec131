//! Graphviz and plain-text renderings.

use std::fmt::Write;

use crate::factors::Factor;
use crate::pairing::PairClassification;

fn factor_name(f: &Factor, fallback: usize) -> String {
    format!("F_{}", f.index().unwrap_or(fallback))
}

/// One undirected graph with vertices `0..n`; the isolated vertex, if any,
/// is drawn dashed.
pub fn factor_dot(f: &Factor, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for v in 0..f.order() {
        if Some(v) == f.isolated() {
            writeln!(out, "  {v} [style=dashed];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for e in f.edges() {
        writeln!(out, "  {} -- {};", e.u(), e.v()).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn factors_dot(factors: &[Factor]) -> String {
    factors
        .iter()
        .enumerate()
        .map(|(pos, f)| factor_dot(f, &factor_name(f, pos)))
        .collect()
}

/// Union of a pair, `f` in blue and `g` in red; witness edges are bold.
pub fn pair_dot(f: &Factor, g: &Factor, c: &PairClassification) -> String {
    let on_walk = |a: usize, b: usize| {
        c.witness
            .steps
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    };
    let mut out = String::new();
    writeln!(out, "graph {}_{} {{", factor_name(f, 0), factor_name(g, 1)).unwrap();
    writeln!(out, "  label=\"perfect={}\";", c.perfect).unwrap();
    for v in 0..f.order() {
        writeln!(out, "  {v};").unwrap();
    }
    for (factor, color) in [(f, "blue"), (g, "red")] {
        for e in factor.edges() {
            let width = if on_walk(e.u(), e.v()) { 2.5 } else { 1.0 };
            writeln!(
                out,
                "  {} -- {} [color={color}, penwidth={width}];",
                e.u(),
                e.v()
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn factor_text(f: &Factor, fallback: usize) -> String {
    let mut out = format!("{} n={}", factor_name(f, fallback), f.order());
    if let Some(v) = f.isolated() {
        write!(out, " isolated={v}").unwrap();
    }
    out.push(':');
    for e in f.edges() {
        write!(out, " {e}").unwrap();
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::build_modular_factor;
    use crate::pairing::classify_pair;

    #[test]
    fn dot_lists_vertices_and_edges() {
        let f = build_modular_factor(5, 0).unwrap();
        let dot = factor_dot(&f, "F_0");
        assert_eq!(
            dot,
            "graph F_0 {\n  0 [style=dashed];\n  1;\n  2;\n  3;\n  4;\n  1 -- 4;\n  2 -- 3;\n}\n"
        );
    }

    #[test]
    fn text_line() {
        let f = build_modular_factor(5, 1).unwrap();
        assert_eq!(factor_text(&f, 0), "F_1 n=5 isolated=3: {0,1} {2,4}\n");
    }

    #[test]
    fn witness_edges_are_bold() {
        let f = build_modular_factor(5, 0).unwrap();
        let g = build_modular_factor(5, 1).unwrap();
        let c = classify_pair(&f, &g).unwrap();
        let dot = pair_dot(&f, &g, &c);
        assert!(dot.starts_with("graph F_0_F_1 {"));
        assert_eq!(dot.matches("penwidth=2.5").count(), 4);
        assert!(dot.contains("1 -- 4 [color=blue"));
        assert!(dot.contains("0 -- 1 [color=red"));
    }
}

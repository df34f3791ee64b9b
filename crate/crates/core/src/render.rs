//! Text diamonds: degree 0 on the bottom row, `p` increasing to the right.

use std::fmt;

use crate::cohomology::{CohomologyTable, TableKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedDiamond {
    pub kind: TableKind,
    /// Top row first, as printed.
    pub rows: Vec<String>,
}

impl fmt::Display for RenderedDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Lays `t` out as a Hodge diamond. Entry `(p, q)` sits on row `p + q`
/// (counted from the bottom) in column `p − q`; rows above the last nonzero
/// degree are dropped. De Rham tables become the single row `b: b₀ b₁ …`.
pub fn render_diamond(t: &CohomologyTable) -> RenderedDiamond {
    if t.is_graded() {
        let values: Vec<String> = t.betti().iter().map(usize::to_string).collect();
        return RenderedDiamond {
            kind: t.kind(),
            rows: vec![format!("b: {}", values.join(" "))],
        };
    }
    let w = t.window();
    let Some((lo, hi)) = w.degree_range() else {
        return RenderedDiamond {
            kind: t.kind(),
            rows: vec![],
        };
    };
    let top = (lo..=hi).rev().find(|&k| t.degree(k) > 0).unwrap_or(lo);
    let width = w
        .bidegrees()
        .map(|(p, q)| t.get(p, q).to_string().len())
        .max()
        .unwrap_or(1);
    let x_min = w.p_min - w.q_max;
    let mut rows = Vec::new();
    for k in (lo..=top).rev() {
        let mut line = String::new();
        let mut cursor = x_min;
        for p in w.p_min..=w.p_max {
            let q = k - p;
            if !w.contains((p, q)) {
                continue;
            }
            let x = p - q;
            while cursor < x {
                line.push_str(&" ".repeat(width));
                cursor += 1;
            }
            line.push_str(&format!("{:>width$}", t.get(p, q)));
            cursor += 1;
        }
        rows.push(line.trim_end().to_string());
    }
    RenderedDiamond { kind: t.kind(), rows }
}

/// Reads a rendered diamond back into per-degree sorted entries, bottom
/// row first.
pub fn parse_diamond(rows: &[String]) -> Vec<Vec<usize>> {
    if let [only] = rows {
        if let Some(rest) = only.strip_prefix("b:") {
            return rest.split_whitespace().map(|v| vec![v.parse().unwrap_or(0)]).collect();
        }
    }
    rows.iter()
        .rev()
        .map(|r| {
            let mut v: Vec<usize> = r.split_whitespace().filter_map(|x| x.parse().ok()).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::dot;
    use crate::cohomology::{de_rham, dolbeault};
    use crate::models::torus;

    #[test]
    fn dot_renders_as_a_single_one() {
        let d = render_diamond(&dolbeault(&dot(0, 0)));
        assert_eq!(d.rows, vec!["1"]);
    }

    #[test]
    fn torus_diamond_shape() {
        let d = render_diamond(&dolbeault(torus(1).unwrap().complex()));
        assert_eq!(d.rows, vec![" 1", "1 1", " 1"]);
        assert_eq!(parse_diamond(&d.rows), vec![vec![1], vec![1, 1], vec![1]]);
        assert_eq!(render_diamond(&de_rham(torus(1).unwrap().complex())).rows, vec!["b: 1 2 1"]);
    }
}

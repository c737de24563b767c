use super::FiniteSpace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the specialization order as a DOT digraph.
///
/// There is an edge `x -> y` when `x ⤳ y`, `x ≠ y`, and no point from a
/// third indistinguishability class lies strictly between them. Nodes and
/// edges follow point order, so the output is stable.
pub fn to_dot(space: &FiniteSpace, name: &str) -> String {
    let n = space.len();
    let same = |a: usize, b: usize| space.specializes(a, b) && space.specializes(b, a);
    let mut out = format!("digraph {} {{\n", quote(name));
    for i in 0..n {
        out.push_str(&format!("  {};\n", quote(space.label(i))));
    }
    for x in 0..n {
        for y in 0..n {
            if x == y || !space.specializes(x, y) {
                continue;
            }
            let between = (0..n).any(|z| {
                !same(z, x) && !same(z, y) && space.specializes(x, z) && space.specializes(z, y)
            });
            if !between {
                out.push_str(&format!("  {} -> {};\n", quote(space.label(x)), quote(space.label(y))));
            }
        }
    }
    out.push_str("}\n");
    out
}

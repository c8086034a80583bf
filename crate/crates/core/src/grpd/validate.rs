use std::fmt;

use super::FiniteGroupoid;

/// A violated groupoid law, with the offending indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EndpointOutOfRange { morphism: usize },
    TableLength { table: &'static str, len: usize, expected: usize },
    IndexOutOfRange { table: &'static str, position: usize },
    IdentityEndpoints { object: usize, morphism: usize },
    CompositionMissing { g: usize, f: usize },
    CompositionSpurious { g: usize, f: usize },
    CompositionEndpoints { g: usize, f: usize, composite: usize },
    Associativity { h: usize, g: usize, f: usize },
    LeftUnit { morphism: usize },
    RightUnit { morphism: usize },
    Inverse { morphism: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EndpointOutOfRange { morphism } => {
                write!(out, "morphism {morphism} has an endpoint that is not an object")
            }
            Violation::TableLength { table, len, expected } => {
                write!(out, "{table} table has {len} entries, expected {expected}")
            }
            Violation::IndexOutOfRange { table, position } => {
                write!(out, "{table} entry {position} is not a morphism index")
            }
            Violation::IdentityEndpoints { object, morphism } => {
                write!(out, "identity {morphism} of object {object} is not an endomorphism of it")
            }
            Violation::CompositionMissing { g, f } => {
                write!(out, "composition undefined for composable pair ({g}, {f})")
            }
            Violation::CompositionSpurious { g, f } => {
                write!(out, "composition defined for non-composable pair ({g}, {f})")
            }
            Violation::CompositionEndpoints { g, f, composite } => {
                write!(out, "composite {composite} of ({g}, {f}) has the wrong source or target")
            }
            Violation::Associativity { h, g, f } => {
                write!(out, "associativity violated at ({h}, {g}, {f})")
            }
            Violation::LeftUnit { morphism } => write!(out, "left unit law violated at {morphism}"),
            Violation::RightUnit { morphism } => {
                write!(out, "right unit law violated at {morphism}")
            }
            Violation::Inverse { morphism } => write!(out, "inverse law violated at {morphism}"),
        }
    }
}

/// Checks every groupoid law exhaustively. An empty list means the tables
/// describe a groupoid; otherwise the first entry is the first failing law.
pub fn validate_groupoid(g: &FiniteGroupoid) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.object_count;
    let m = g.arrows.len();
    for (f, a) in g.arrows.iter().enumerate() {
        if a.src >= n || a.dst >= n {
            out.push(Violation::EndpointOutOfRange { morphism: f });
        }
    }
    if g.identity_of.len() != n {
        out.push(Violation::TableLength { table: "identity", len: g.identity_of.len(), expected: n });
    }
    if g.inverse_of.len() != m {
        out.push(Violation::TableLength { table: "inverse", len: g.inverse_of.len(), expected: m });
    }
    for (pos, &i) in g.identity_of.iter().enumerate() {
        if i >= m {
            out.push(Violation::IndexOutOfRange { table: "identity", position: pos });
        }
    }
    for (pos, &i) in g.inverse_of.iter().enumerate() {
        if i >= m {
            out.push(Violation::IndexOutOfRange { table: "inverse", position: pos });
        }
    }
    for (&(gm, f), &gf) in &g.compose {
        if gm >= m || f >= m || gf >= m {
            out.push(Violation::IndexOutOfRange { table: "compose", position: gf });
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (x, &i) in g.identity_of.iter().enumerate() {
        if g.arrows[i].src != x || g.arrows[i].dst != x {
            out.push(Violation::IdentityEndpoints { object: x, morphism: i });
        }
    }
    for &(gm, f) in g.compose.keys() {
        if g.arrows[f].dst != g.arrows[gm].src {
            out.push(Violation::CompositionSpurious { g: gm, f });
        }
    }
    let mut outgoing = vec![Vec::new(); n];
    for (f, a) in g.arrows.iter().enumerate() {
        outgoing[a.src].push(f);
    }
    let mut composable = Vec::new();
    for f in 0..m {
        for &gm in &outgoing[g.arrows[f].dst] {
            match g.compose.get(&(gm, f)) {
                None => out.push(Violation::CompositionMissing { g: gm, f }),
                Some(&gf) => {
                    if g.arrows[gf].src != g.arrows[f].src || g.arrows[gf].dst != g.arrows[gm].dst {
                        out.push(Violation::CompositionEndpoints { g: gm, f, composite: gf });
                    }
                    composable.push((gm, f, gf));
                }
            }
        }
    }
    if !out.is_empty() {
        out.sort_by_key(order_key);
        return out;
    }

    for f in 0..m {
        let a = g.arrows[f];
        if g.compose[&(g.identity_of[a.dst], f)] != f {
            out.push(Violation::LeftUnit { morphism: f });
        }
        if g.compose[&(f, g.identity_of[a.src])] != f {
            out.push(Violation::RightUnit { morphism: f });
        }
        let inv = g.inverse_of[f];
        let ok = g.arrows[inv].src == a.dst
            && g.arrows[inv].dst == a.src
            && g.compose.get(&(inv, f)) == Some(&g.identity_of[a.src])
            && g.compose.get(&(f, inv)) == Some(&g.identity_of[a.dst]);
        if !ok {
            out.push(Violation::Inverse { morphism: f });
        }
    }
    for &(gm, f, gf) in &composable {
        for &h in &outgoing[g.arrows[gm].dst] {
            let left = g.compose[&(h, gf)];
            let right = g.compose[&(g.compose[&(h, gm)], f)];
            if left != right {
                out.push(Violation::Associativity { h, g: gm, f });
            }
        }
    }
    out.sort_by_key(order_key);
    out
}

fn order_key(v: &Violation) -> (u8, usize, usize, usize) {
    match *v {
        Violation::EndpointOutOfRange { morphism } => (0, morphism, 0, 0),
        Violation::TableLength { len, .. } => (1, len, 0, 0),
        Violation::IndexOutOfRange { position, .. } => (2, position, 0, 0),
        Violation::IdentityEndpoints { object, .. } => (3, object, 0, 0),
        Violation::CompositionSpurious { g, f } => (4, g, f, 0),
        Violation::CompositionMissing { g, f } => (5, g, f, 0),
        Violation::CompositionEndpoints { g, f, .. } => (6, g, f, 0),
        Violation::LeftUnit { morphism } => (7, morphism, 0, 0),
        Violation::RightUnit { morphism } => (8, morphism, 0, 0),
        Violation::Inverse { morphism } => (9, morphism, 0, 0),
        Violation::Associativity { h, g, f } => (10, h, g, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpd::FiniteGroupoid;

    #[test]
    fn accepts_standard_constructions() {
        let z2 = FiniteGroupoid::cyclic(2);
        for g in [
            FiniteGroupoid::discrete(2),
            z2.clone(),
            z2.coproduct(&FiniteGroupoid::discrete(1)),
            z2.product(&FiniteGroupoid::codiscrete(2)),
        ] {
            assert_eq!(validate_groupoid(&g), vec![]);
        }
    }

    #[test]
    fn reports_broken_inverse() {
        let z2 = FiniteGroupoid::cyclic(2);
        let broken = FiniteGroupoid::from_tables(
            1,
            z2.arrows().to_vec(),
            z2.identities().to_vec(),
            z2.compose_table().clone(),
            vec![0, 0],
        );
        let report = validate_groupoid(&broken);
        assert_eq!(report.first(), Some(&Violation::Inverse { morphism: 1 }));
        assert_eq!(report[0].to_string(), "inverse law violated at 1");
    }

    #[test]
    fn reports_missing_composite() {
        let mut table = FiniteGroupoid::cyclic(2).compose_table().clone();
        table.remove(&(1, 1));
        let broken =
            FiniteGroupoid::from_tables(1, FiniteGroupoid::cyclic(2).arrows().to_vec(), vec![0], table, vec![0, 1]);
        assert_eq!(validate_groupoid(&broken)[0], Violation::CompositionMissing { g: 1, f: 1 });
    }
}

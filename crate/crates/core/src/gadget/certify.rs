use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::subtour::{brute_force_subtours, enumerate_subtours, SubtourCover};
use super::{Gadget, Pair, Slot};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Swap between two canonical covers, identified by their pair bitmasks.
/// Counted from the cover with fewer paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDistance {
    pub from: u8,
    pub to: u8,
    pub removed: usize,
    pub added: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReport {
    pub gadget: String,
    pub spec: Vec<i64>,
    pub covers: usize,
    pub locally_strict_covers: usize,
    pub checks: Vec<Check>,
    pub distances: Vec<CoverDistance>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Covers whose paths are exactly `Z-Z'` plus one path per present pair,
/// grouped by the presence bitmask.
pub fn canonical_covers(g: &Gadget) -> BTreeMap<u8, Vec<SubtourCover>> {
    let mut out: BTreeMap<u8, Vec<SubtourCover>> = BTreeMap::new();
    for c in enumerate_subtours(g, false) {
        if c.is_canonical(g) {
            out.entry(c.presence(g)).or_default().push(c);
        }
    }
    out
}

/// Certifies a two-pair gadget as an `(r_x, r_y)` parity gadget.
pub fn verify_parity_spec(g: &Gadget, r_x: i64, r_y: i64) -> CertReport {
    certify(g, &[r_x, r_y])
}

/// Certifies a three-pair gadget against `(r_x, r_y, r_t)`.
pub fn verify_double_spec(g: &Gadget, r_x: i64, r_y: i64, r_t: i64) -> CertReport {
    certify(g, &[r_x, r_y, r_t])
}

fn mask_name(m: u8) -> String {
    let mut s = String::from("Z");
    for p in Pair::ALL {
        if m & p.bit() != 0 {
            s.push_str(&format!("{p:?}"));
        }
    }
    s
}

fn certify(g: &Gadget, spec: &[i64]) -> CertReport {
    let all = enumerate_subtours(g, false);
    let mut rep = CertReport {
        gadget: g.name().to_string(),
        spec: spec.to_vec(),
        covers: all.len(),
        locally_strict_covers: all.iter().filter(|c| c.locally_strict(g)).count(),
        checks: Vec::new(),
        distances: Vec::new(),
    };
    let pairs = g.pairs();
    if spec.len() != pairs.len() {
        rep.check(
            "arity",
            false,
            format!("gadget has {} pairs, spec gives {}", pairs.len(), spec.len()),
        );
        return rep;
    }
    if g.edges().len() <= 24 {
        let mut fast: Vec<Vec<usize>> = all.iter().map(|c| c.edges.clone()).collect();
        fast.sort();
        let brute = brute_force_subtours(g);
        rep.check(
            "enumeration matches brute force",
            fast == brute,
            format!("{} vs {}", fast.len(), brute.len()),
        );
    }
    let bad_pairing = all.iter().filter(|c| !c.pairing_rule_holds(g)).count();
    rep.check(
        "pairing rule",
        bad_pairing == 0,
        format!("{bad_pairing} covers join both terminals of a pair to other paths"),
    );

    let canon = canonical_covers(g);
    let full: u8 = pairs.iter().map(|p| p.bit()).sum();
    let mut unique: BTreeMap<u8, &SubtourCover> = BTreeMap::new();
    for m in 0..=full {
        let found = canon.get(&m).map_or(0, |v| v.len());
        rep.check(
            &format!("canonical {}", mask_name(m)),
            found == 1,
            format!("{found} covers"),
        );
        if found == 1 {
            unique.insert(m, &canon[&m][0]);
        }
    }

    for (&m, c) in &unique {
        let has = |p: Pair| m & p.bit() != 0;
        let mut expect = vec![(Slot::Same, Slot::Diff, has(Pair::X) == has(Pair::Y))];
        if g.is_double() {
            expect.push((Slot::SameT, Slot::DiffT, has(Pair::X) == has(Pair::T)));
        }
        let mut ok = true;
        let mut detail = String::new();
        for (same, diff, is_same) in expect {
            let (s, d) = (c.slot_count(g, same), c.slot_count(g, diff));
            let want = if is_same { (1, 0) } else { (0, 1) };
            ok &= (s, d) == want;
            detail.push_str(&format!("{same:?}={s} {diff:?}={d}; "));
        }
        rep.check(&format!("weights {}", mask_name(m)), ok, detail);
    }

    let r_of = |p: Pair| spec[Pair::ALL.iter().position(|&q| q == p).unwrap()];
    let masks: Vec<u8> = unique.keys().copied().collect();
    for (i, &m1) in masks.iter().enumerate() {
        for &m2 in &masks[i + 1..] {
            let (c1, c2) = (unique[&m1], unique[&m2]);
            let (lo, hi, a, b) = if c1.paths.len() <= c2.paths.len() {
                (m1, m2, c1, c2)
            } else {
                (m2, m1, c2, c1)
            };
            let (removed, added) = a.distance_to(b);
            let toggled: Vec<Pair> = pairs.iter().copied().filter(|p| (m1 ^ m2) & p.bit() != 0).collect();
            let (passed, want) = if toggled.len() == 1 {
                let r = r_of(toggled[0]);
                (
                    removed as i64 == r && added as i64 == r - 1,
                    format!("exactly ({}, {})", r, r - 1),
                )
            } else {
                let r = toggled.iter().map(|&p| r_of(p)).max().unwrap();
                // Equal path counts: the bound must hold in both directions.
                let back = if a.paths.len() == b.paths.len() { added } else { removed };
                (
                    removed as i64 >= r && back as i64 >= r,
                    format!("at least {r} removed"),
                )
            };
            rep.check(
                &format!("swap {}->{}", mask_name(lo), mask_name(hi)),
                passed,
                format!("removed {removed}, added {added}; want {want}"),
            );
            rep.distances.push(CoverDistance {
                from: lo,
                to: hi,
                removed,
                added,
            });
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{double_gadget_222, flexible_gadget, simple_gadget_42};

    fn show(r: &CertReport) -> String {
        r.failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn flexible_is_22() {
        let r = verify_parity_spec(&flexible_gadget(), 2, 2);
        assert!(r.passed(), "{}", show(&r));
        assert_eq!(r.locally_strict_covers, 4);
        assert!(!verify_parity_spec(&flexible_gadget(), 2, 3).passed());
    }

    #[test]
    fn simple_is_42() {
        let g = simple_gadget_42();
        let r = verify_parity_spec(&g, 4, 2);
        assert!(r.passed(), "{}", show(&r));
        assert_eq!(r.covers, 4);
        assert!(!verify_parity_spec(&g, 2, 2).passed());
    }

    #[test]
    fn double_is_222() {
        let g = double_gadget_222();
        let r = verify_double_spec(&g, 2, 2, 2);
        assert!(r.passed(), "{}", show(&r));
        assert_eq!(r.locally_strict_covers, 8);
        assert!(!verify_parity_spec(&g, 2, 2).passed());
    }

    #[test]
    fn flexible_first_swap() {
        // (1) -> (2) drops ZX and X'Y' and adds ZY'.
        let g = flexible_gadget();
        let canon = canonical_covers(&g);
        let (c1, c2) = (&canon[&0][0], &canon[&1][0]);
        let name = |e: usize| {
            let ge = &g.edges()[e];
            format!("{}{}", g.vertex_name(ge.u), g.vertex_name(ge.v))
        };
        let gone: Vec<String> = c1.edges.iter().filter(|e| !c2.edges.contains(e)).map(|&e| name(e)).collect();
        let new: Vec<String> = c2.edges.iter().filter(|e| !c1.edges.contains(e)).map(|&e| name(e)).collect();
        assert_eq!(gone, vec!["ZX", "X'Y'"]);
        assert_eq!(new, vec!["Y'Z"]);
    }
}

use super::{apply_swap, is_tour, norm, swap_delta, Pair, Swap, Tour, Weights};
use crate::error::{Error, Result};
use crate::weight::ExactWeight;

fn order_of(n: usize, tour: &Tour) -> Result<Vec<usize>> {
    tour.order(n).ok_or_else(|| Error::Input("not a tour".into()))
}

struct Dense {
    n: usize,
    w: Vec<Option<ExactWeight>>,
}

impl Dense {
    fn new<W: Weights + ?Sized>(src: &W) -> Self {
        let n = src.num_vertices();
        let mut w = vec![None; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let x = src.weight_of(u, v);
                w[u * n + v] = x.clone();
                w[v * n + u] = x;
            }
        }
        Dense { n, w }
    }

    fn get(&self, u: usize, v: usize) -> Option<&ExactWeight> {
        self.w[u * self.n + v].as_ref()
    }
}

/// All improving swaps of two or three edges, by segment reconnection
/// over the tour order.
pub fn improving_3swaps<W: Weights + ?Sized>(w: &W, tour: &Tour) -> Result<Vec<(Swap, ExactWeight)>> {
    let n = w.num_vertices();
    let o = order_of(n, tour)?;
    let d = Dense::new(w);
    let mut out = Vec::new();
    let mut consider = |removed: [Pair; 3], added: &[Pair], k: usize| {
        if added.iter().any(|&(u, v)| u == v || tour.contains(u, v)) {
            return;
        }
        let mut delta = ExactWeight::zero();
        for &(u, v) in &added[..k] {
            match d.get(u, v) {
                Some(x) => delta += x,
                None => return,
            }
        }
        for &(u, v) in &removed[..k] {
            delta -= d.get(u, v).expect("tour edge has a weight");
        }
        if delta.is_negative() {
            out.push((Swap::new(removed[..k].iter().copied(), added[..k].iter().copied()), delta));
        }
    };
    let at = |i: usize| o[i % n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b, c, dd) = (at(i), at(i + 1), at(j), at(j + 1));
            let removed = [(a, b), (c, dd), (0, 0)];
            consider(removed, &[(a, c), (b, dd)], 2);
            for k in j + 1..n {
                let (e, f) = (at(k), at(k + 1));
                let removed = [(a, b), (c, dd), (e, f)];
                consider(removed, &[(a, c), (b, e), (dd, f)], 3);
                consider(removed, &[(a, dd), (e, b), (c, f)], 3);
                consider(removed, &[(a, dd), (e, c), (b, f)], 3);
                consider(removed, &[(a, e), (dd, b), (c, f)], 3);
            }
        }
    }
    // Short segments can make two reconnections coincide.
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup();
    Ok(out)
}

/// Sequential search with the positive-gain criterion, removing heavy tour
/// edges first. Every improving move of at most three edges has a
/// rotation whose partial gains are all positive, so `None` means no
/// improving 3-swap exists.
pub fn find_improving_3swap<W: Weights + ?Sized>(w: &W, tour: &Tour) -> Result<Option<(Swap, ExactWeight)>> {
    let n = w.num_vertices();
    let o = order_of(n, tour)?;
    let d = Dense::new(w);
    let mut pos = vec![0; n];
    for (i, &v) in o.iter().enumerate() {
        pos[v] = i;
    }
    let nbrs = |v: usize| [o[(pos[v] + 1) % n], o[(pos[v] + n - 1) % n]];
    let wt = |u: usize, v: usize| d.get(u, v);
    let mut x1s: Vec<usize> = (0..n).collect();
    x1s.sort_by(|&i, &j| {
        let wi = wt(o[i], o[(i + 1) % n]);
        let wj = wt(o[j], o[(j + 1) % n]);
        wj.cmp(&wi)
    });
    let try_swap = |removed: Vec<Pair>, added: Vec<Pair>| -> Option<(Swap, ExactWeight)> {
        let s = Swap::new(removed.clone(), added.clone());
        if s.removed.len() != removed.len() || s.added.len() != added.len() {
            return None;
        }
        let next = apply_swap(n, tour, &s).ok()?;
        debug_assert!(is_tour(n, &next));
        let delta = swap_delta(w, &s).ok()?;
        delta.is_negative().then_some((s, delta))
    };
    for &i in &x1s {
        let (p, q) = (o[i], o[(i + 1) % n]);
        for (t1, t2) in [(p, q), (q, p)] {
            let wx1 = wt(t1, t2).expect("tour edge has a weight").clone();
            for t3 in 0..n {
                if t3 == t1 || t3 == t2 || tour.contains(t2, t3) {
                    continue;
                }
                let Some(y1) = wt(t2, t3) else { continue };
                let g1 = wx1.clone() - y1.clone();
                if !g1.is_positive() {
                    continue;
                }
                for t4 in nbrs(t3) {
                    if norm(t3, t4) == norm(t1, t2) {
                        continue;
                    }
                    let g1x = g1.clone() + wt(t3, t4).expect("tour edge").clone();
                    if t4 != t1 && !tour.contains(t4, t1) {
                        if let Some(y2) = wt(t4, t1) {
                            if (g1x.clone() - y2.clone()).is_positive() {
                                if let Some(found) = try_swap(vec![(t1, t2), (t3, t4)], vec![(t2, t3), (t4, t1)]) {
                                    return Ok(Some(found));
                                }
                            }
                        }
                    }
                    for t5 in 0..n {
                        if t5 == t4 || tour.contains(t4, t5) || norm(t4, t5) == norm(t2, t3) {
                            continue;
                        }
                        let Some(y2) = wt(t4, t5) else { continue };
                        let g2 = g1x.clone() - y2.clone();
                        if !g2.is_positive() {
                            continue;
                        }
                        for t6 in nbrs(t5) {
                            let x3 = norm(t5, t6);
                            if x3 == norm(t1, t2) || x3 == norm(t3, t4) || t6 == t1 || tour.contains(t6, t1) {
                                continue;
                            }
                            let Some(y3) = wt(t6, t1) else { continue };
                            let gain = g2.clone() + wt(t5, t6).expect("tour edge").clone() - y3.clone();
                            if !gain.is_positive() {
                                continue;
                            }
                            if let Some(found) = try_swap(
                                vec![(t1, t2), (t3, t4), (t5, t6)],
                                vec![(t2, t3), (t4, t5), (t6, t1)],
                            ) {
                                return Ok(Some(found));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive oracle for small graphs: every set of two or three tour
/// edges, every way to reconnect the freed endpoints, kept if the result
/// is a tour and weighs less.
pub fn brute_force_improving_3swaps<W: Weights + ?Sized>(w: &W, tour: &Tour) -> Result<Vec<(Swap, ExactWeight)>> {
    let n = w.num_vertices();
    if !is_tour(n, tour) {
        return Err(Error::Input("not a tour".into()));
    }
    let es = tour.edges();
    let mut out = Vec::new();
    let mut removal_sets: Vec<Vec<Pair>> = Vec::new();
    for a in 0..es.len() {
        for b in a + 1..es.len() {
            removal_sets.push(vec![es[a], es[b]]);
            for c in b + 1..es.len() {
                removal_sets.push(vec![es[a], es[b], es[c]]);
            }
        }
    }
    for removed in removal_sets {
        let mut ends: Vec<usize> = removed.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort_unstable();
        ends.dedup();
        let mut cands = Vec::new();
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                if !tour.contains(ends[i], ends[j]) && w.weight_of(ends[i], ends[j]).is_some() {
                    cands.push((ends[i], ends[j]));
                }
            }
        }
        let k = removed.len();
        let mut pick = Vec::new();
        choose(&cands, k, 0, &mut pick, &mut |added| {
            let s = Swap::new(removed.clone(), added.to_vec());
            if apply_swap(n, tour, &s).is_ok() {
                let d = swap_delta(w, &s).expect("edges have weights");
                if d.is_negative() {
                    out.push((s, d));
                }
            }
        });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn choose(items: &[Pair], k: usize, from: usize, cur: &mut Vec<Pair>, f: &mut impl FnMut(&[Pair])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        choose(items, k, i + 1, cur, f);
        cur.pop();
    }
}

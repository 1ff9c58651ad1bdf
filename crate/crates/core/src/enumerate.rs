//! Exhaustive enumeration of small left regular bands with identity.

use crate::band::{Band, Element};

/// Every left regular band on `{0, 1, …, k}` with identity `0`, as labelled
/// tables. Products of non-identity elements are never the identity in a
/// band, so only entries `1..=k` are tried off the first row and column.
pub fn all_lrb_tables(k: usize) -> Vec<Vec<Vec<Element>>> {
    let n = k + 1;
    let mut t: Vec<Vec<Option<Element>>> = vec![vec![None; n]; n];
    for (x, row) in t.iter_mut().enumerate() {
        row[0] = Some(x);
        row[x] = Some(x);
    }
    t[0] = (0..n).map(Some).collect();
    let cells: Vec<(Element, Element)> =
        (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    let mut out = Vec::new();
    fill(&mut t, &cells, 0, &mut out);
    out
}

fn consistent(t: &[Vec<Option<Element>>]) -> bool {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = t[x][y] else { continue };
            // xyx = xy
            if let Some(v) = t[xy][x] {
                if v != xy {
                    return false;
                }
            }
            for z in 0..n {
                let (Some(yz), Some(l)) = (t[y][z], t[xy][z]) else { continue };
                if let Some(r) = t[x][yz] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn fill(t: &mut Vec<Vec<Option<Element>>>, cells: &[(Element, Element)], i: usize, out: &mut Vec<Vec<Vec<Element>>>) {
    if i == cells.len() {
        out.push(t.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect());
        return;
    }
    let (x, y) = cells[i];
    for v in 1..t.len() {
        t[x][y] = Some(v);
        if consistent(t) {
            fill(t, cells, i + 1, out);
        }
    }
    t[x][y] = None;
}

fn permutations(k: usize) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    let mut p: Vec<Element> = (1..=k).collect();
    permute(&mut p, 0, &mut out);
    out
}

fn permute(p: &mut Vec<Element>, i: usize, out: &mut Vec<Vec<Element>>) {
    if i == p.len() {
        out.push(p.clone());
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, out);
        p.swap(i, j);
    }
}

/// The lexicographically least relabelling of a table with identity `0`
/// over all permutations of the other elements.
pub fn canonical_table(rows: &[Vec<Element>]) -> Vec<Vec<Element>> {
    canonical_with(rows, &permutations(rows.len() - 1))
}

fn canonical_with(rows: &[Vec<Element>], perms: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let n = rows.len();
    let mut best: Option<Vec<Vec<Element>>> = None;
    for p in perms {
        // f(0) = 0, f(i) = p[i - 1]; build the inverse to read off the table.
        let mut inv = vec![0; n];
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i + 1;
        }
        let f = |x: Element| if x == 0 { 0 } else { p[x - 1] };
        let t: Vec<Vec<Element>> =
            (0..n).map(|a| (0..n).map(|b| f(rows[inv[a]][inv[b]])).collect()).collect();
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.unwrap_or_else(|| rows.to_vec())
}

/// One band per isomorphism class with `k` non-identity elements, in
/// canonical-table order.
pub fn lrbs_up_to_isomorphism(k: usize) -> Vec<Band> {
    let perms = permutations(k);
    let mut reps: Vec<Vec<Vec<Element>>> =
        all_lrb_tables(k).iter().map(|t| canonical_with(t, &perms)).collect();
    reps.sort();
    reps.dedup();
    reps.into_iter().map(|t| Band::new(t, 0, None).expect("enumerated tables are bands")).collect()
}

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use super::{FreeModule, ModuleElement, Resolution};
use crate::poly::{MonomialOrder, Polynomial};
use crate::rational::Rational;

/// Minimal resolution obtained from `res` by Gaussian elimination on unit
/// entries: a unit `u` at row `r`, column `c` of `d_i` splits off the
/// trivial complex `R e_c -> R e_r`; the rest of `d_i` becomes
/// `D - alpha u^-1 beta`, row `c` leaves `d_{i+1}` and column `r` leaves
/// `d_{i-1}`. Levels are scanned from the top down.
pub fn minimize(res: &Resolution) -> Resolution {
    run(res, None)
}

/// Same as [`minimize`] with levels and pivots visited in a seeded random
/// order. The Betti numbers do not depend on the order.
pub fn minimize_shuffled(res: &Resolution, seed: u64) -> Resolution {
    run(res, Some(ChaCha8Rng::seed_from_u64(seed)))
}

fn shuffle<T>(v: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..v.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
}

/// Row and value of the first constant entry on a live row.
fn unit(col: &ModuleElement, live_rows: &[bool]) -> Option<(usize, Rational)> {
    col.entries().iter().find_map(|(r, p)| {
        let (m, c) = p.leading()?;
        (live_rows[*r] && p.len() == 1 && m.is_one()).then(|| (*r, c.clone()))
    })
}

/// `col - f * pivot`.
fn sub_multiple(col: &ModuleElement, f: &Polynomial, pivot: &ModuleElement, ord: &MonomialOrder) -> ModuleElement {
    let mut acc: BTreeMap<usize, Polynomial> = col.entries().iter().cloned().collect();
    for (k, p) in pivot.entries() {
        let prod = f.mul(p, ord);
        let v = match acc.remove(k) {
            Some(a) => a.sub(&prod, ord),
            None => prod.neg(),
        };
        acc.insert(*k, v);
    }
    ModuleElement::new(acc.into_iter().collect())
}

fn run(res: &Resolution, mut rng: Option<ChaCha8Rng>) -> Resolution {
    let ord = res.ring().default_order();
    let l = res.length();
    let mut cols: Vec<Vec<ModuleElement>> = (1..=l).map(|i| res.differential(i).to_vec()).collect();
    let mut alive: Vec<Vec<bool>> = res.modules().iter().map(|f| alloc::vec![true; f.rank()]).collect();
    let mut levels: Vec<usize> = (1..=l).collect();
    if let Some(g) = rng.as_mut() {
        shuffle(&mut levels, g);
    }
    while let Some(i) = levels.pop() {
        let mut queue: Vec<usize> = (0..cols[i - 1].len()).collect();
        if let Some(g) = rng.as_mut() {
            shuffle(&mut queue, g);
        }
        while let Some(c) = queue.pop() {
            if !alive[i][c] {
                continue;
            }
            let Some((r, u)) = unit(&cols[i - 1][c], &alive[i - 1]) else { continue };
            let pivot = cols[i - 1][c].clone();
            let inv = u.recip();
            for c2 in 0..cols[i - 1].len() {
                if c2 == c || !alive[i][c2] {
                    continue;
                }
                let Some(a) = cols[i - 1][c2].component(r) else { continue };
                let f = a.scale(&inv);
                cols[i - 1][c2] = sub_multiple(&cols[i - 1][c2], &f, &pivot, &ord);
                queue.push(c2);
            }
            alive[i][c] = false;
            alive[i - 1][r] = false;
        }
    }
    compact(res, cols, &alive)
}

fn compact(res: &Resolution, cols: Vec<Vec<ModuleElement>>, alive: &[Vec<bool>]) -> Resolution {
    let index: Vec<Vec<Option<usize>>> = alive
        .iter()
        .map(|a| {
            let mut next = 0;
            a.iter()
                .map(|&live| {
                    live.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let mut modules: Vec<FreeModule> = res
        .modules()
        .iter()
        .zip(alive)
        .map(|(f, a)| {
            FreeModule::new(f.shifts().iter().zip(a).filter(|(_, &l)| l).map(|(s, _)| *s).collect())
        })
        .collect();
    let mut diffs: Vec<Vec<ModuleElement>> = cols
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            let i = k + 1;
            d.into_iter()
                .zip(&alive[i])
                .filter(|(_, &l)| l)
                .map(|(col, _)| {
                    ModuleElement::new(
                        col.entries()
                            .iter()
                            .filter_map(|(r, p)| index[i - 1][*r].map(|nr| (nr, p.clone())))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    while modules.len() > 1 && modules.last().is_some_and(|f| f.rank() == 0) {
        modules.pop();
        diffs.pop();
    }
    Resolution::new(res.ring().clone(), modules, diffs).expect("minimization keeps indices in range")
}

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AnswerSet, Provenance, Selection};
use crate::dataset::{dominates_unchecked, skyline, Dataset, PointId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Greedy MaxDom: repeatedly take the skyline point dominating the most
/// points not yet dominated by an earlier pick. Pads from the rest of the
/// skyline, then from all points, in id order.
pub fn maxdom<T: Scalar>(ds: &Dataset<T>, k: usize) -> Result<AnswerSet> {
    let n = ds.len();
    if k > n {
        return Err(Error::KAboveSize { k, n });
    }
    let sky = skyline(ds);
    let dominated: Vec<Vec<PointId>> = sky
        .iter()
        .map(|&p| {
            (0..n)
                .filter(|&q| q != p && dominates_unchecked(ds.point(p), ds.point(q)))
                .collect()
        })
        .collect();

    let mut covered = vec![false; n];
    let mut picked = vec![false; sky.len()];
    let mut sel = Selection::new(n);
    for _ in 0..k.min(sky.len()) {
        let mut best: Option<(usize, usize)> = None;
        for (i, list) in dominated.iter().enumerate() {
            if picked[i] {
                continue;
            }
            let gain = list.iter().filter(|&&q| !covered[q]).count();
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let (i, gain) = best.expect("unpicked skyline point remains");
        picked[i] = true;
        for &q in &dominated[i] {
            covered[q] = true;
        }
        sel.insert(sky[i], Provenance::MaxDom { covered: gain });
    }
    for &p in &sky {
        if sel.len() >= k {
            break;
        }
        sel.insert(p, Provenance::MaxDomFill);
    }
    let mut next = 0;
    while sel.len() < k {
        sel.insert(next, Provenance::MaxDomFill);
        next += 1;
    }
    Ok(sel.finish(k, 0))
}

/// `k` distinct ids drawn uniformly without replacement.
pub fn random_subset<T: Scalar>(ds: &Dataset<T>, k: usize, seed: u64) -> Result<AnswerSet> {
    let n = ds.len();
    if k > n {
        return Err(Error::KAboveSize { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<PointId> = index::sample(&mut rng, n, k).into_vec();
    Ok(AnswerSet {
        provenance: vec![Provenance::RandomFill; members.len()],
        members,
        t_base: 0,
    })
}

//! Refinement engine shared by the separated-set and growth-rate estimators.
//!
//! A uniform grid cannot resolve separation at scales far below its spacing:
//! the set of points whose orbits keep expanding has measure zero, and the
//! grid points near it thin out geometrically with orbit length. The engine
//! therefore refines the sample as it goes. Level `m` holds a greedy
//! `(m, eps)`-separated population. To build level `m + 1`, each member
//! spawns children inside its Bowen ball, spaced `eps` apart at the newest
//! orbit time along the most-expanded direction of `Df^m`. A greedy pass
//! over all children (in deterministic order) then yields the next
//! separated set.
//!
//! Populations are capped by evenly spaced thinning. Cardinalities carry
//! over as a product of per-level growth ratios,
//! `r(m + 1) = r(m) * |accepted children| / |parents|`.

use std::collections::HashMap;

use super::linalg::{apply_norm, top_singular};
use crate::error::{Error, Result};
use crate::maps::{distance, mat_mul, DynamicalMap, Jacobian, Point};
use crate::par;

const MAX_CHILDREN: usize = 32;
const SPACING_SLACK: f64 = 1.0 + 1e-6;
const RESCALE_ABOVE: f64 = 1e100;
const OVERFLOW_LIMIT: f64 = 1e300;

#[derive(Debug, Clone)]
pub(crate) struct EngineConfig {
    pub levels: usize,
    pub epsilon: f64,
    pub budget: usize,
    /// Drop orbits that leave the map's domain.
    pub require_stay: bool,
    /// Spawn children inside Bowen balls; when off the population is the
    /// seed set for every level.
    pub refine: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LevelStats {
    pub m: usize,
    pub parents: usize,
    pub accepted: usize,
    pub log_cardinality: f64,
    /// `max log ||Df^m||` over the accepted population.
    pub max_log_norm: f64,
}

struct Candidate<const D: usize> {
    positions: Vec<Point<D>>,
}

struct Expansion<const D: usize> {
    direction: Point<D>,
    /// log |Df^{m} v| at the newest time
    log_last: f64,
    /// max over earlier times of log |Df^i v|
    log_prev_max: f64,
    /// log of the top singular value of Df^{m}
    log_norm: f64,
}

pub(crate) fn grid_seeds<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    resolution: usize,
) -> (Vec<Point<D>>, f64) {
    let domain = map.domain();
    let spacing = 2.0 * domain.radius / (resolution.max(2) - 1) as f64;
    let total = resolution.pow(D as u32);
    let pts = par::map_range(total, |mut idx| {
        let mut p = [0.0; D];
        for c in p.iter_mut().zip(domain.center.iter()) {
            let k = idx % resolution;
            idx /= resolution;
            *c.0 = c.1 - domain.radius + spacing * k as f64;
        }
        domain.contains(&p, 0.0).then_some(p)
    });
    (pts.into_iter().flatten().collect(), spacing)
}

fn trace<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    x0: &Point<D>,
    len: usize,
    require_stay: bool,
) -> Option<Vec<Point<D>>> {
    let domain = map.domain();
    let mut out = Vec::with_capacity(len);
    let mut x = *x0;
    for i in 0..len {
        if require_stay && !domain.contains(&x, 1e-9) {
            return None;
        }
        out.push(x);
        if i + 1 < len {
            x = map.evaluate(&x);
        }
    }
    Some(out)
}

// Df^{len} along the orbit, kept as (scaled matrix, log scale) per time so
// that long products never overflow.
fn expansion<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    positions: &[Point<D>],
    len: usize,
) -> Result<Expansion<D>> {
    let mut scaled: Vec<(Jacobian<D>, f64)> = Vec::with_capacity(len + 1);
    let mut j = crate::maps::identity::<D>();
    let mut log_scale = 0.0f64;
    scaled.push((j, 0.0));
    for (step, p) in positions.iter().take(len).enumerate() {
        j = mat_mul(&map.jacobian(p), &j);
        let size = j.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
        if !size.is_finite() || size > OVERFLOW_LIMIT {
            return Err(Error::OverflowGuard { step: step + 1 });
        }
        if size > RESCALE_ABOVE || (size > 0.0 && size < 1.0 / RESCALE_ABOVE) {
            j.iter_mut().flatten().for_each(|v| *v /= size);
            log_scale += size.ln();
        }
        scaled.push((j, log_scale));
    }
    let (last, last_scale) = scaled[len];
    let (sigma, v) = top_singular(&last);
    let log_last = if sigma > 0.0 {
        sigma.ln() + last_scale
    } else {
        f64::NEG_INFINITY
    };
    let log_prev_max = scaled[..len]
        .iter()
        .map(|(m, s)| {
            let n = apply_norm(m, &v);
            if n > 0.0 {
                n.ln() + s
            } else {
                f64::NEG_INFINITY
            }
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Expansion {
        direction: v,
        log_last,
        log_prev_max,
        log_norm: log_last,
    })
}

fn bowen_close<const D: usize>(a: &[Point<D>], b: &[Point<D>], eps: f64) -> bool {
    a.iter().zip(b).all(|(p, q)| distance(p, q) <= eps)
}

fn cell<const D: usize>(p: &Point<D>, eps: f64) -> [i64; D] {
    let mut k = [0i64; D];
    for i in 0..D {
        k[i] = (p[i] / eps).floor() as i64;
    }
    k
}

/// Greedy maximal separated subset, scanning candidates in order.
fn greedy<const D: usize>(candidates: Vec<Candidate<D>>, eps: f64) -> Vec<Candidate<D>> {
    let mut kept: Vec<Candidate<D>> = Vec::new();
    let mut buckets: HashMap<[i64; D], Vec<usize>> = HashMap::new();
    let offsets: Vec<[i64; D]> = (0..3usize.pow(D as u32))
        .map(|mut code| {
            let mut o = [0i64; D];
            for c in o.iter_mut() {
                *c = (code % 3) as i64 - 1;
                code /= 3;
            }
            o
        })
        .collect();
    for cand in candidates {
        let home = cell(&cand.positions[0], eps);
        let clash = offsets.iter().any(|off| {
            let mut key = home;
            for i in 0..D {
                key[i] += off[i];
            }
            buckets.get(&key).is_some_and(|ids| {
                ids.iter()
                    .any(|&id| bowen_close(&kept[id].positions, &cand.positions, eps))
            })
        });
        if !clash {
            buckets.entry(home).or_default().push(kept.len());
            kept.push(cand);
        }
    }
    kept
}

fn thin<T>(items: Vec<T>, budget: usize) -> Vec<T> {
    if items.len() <= budget {
        return items;
    }
    let n = items.len();
    let mut picks = (0..budget).map(|i| i * n / budget).peekable();
    items
        .into_iter()
        .enumerate()
        .filter_map(|(idx, item)| {
            if picks.peek() == Some(&idx) {
                picks.next();
                Some(item)
            } else {
                None
            }
        })
        .collect()
}

pub(crate) fn run<const D: usize, M: DynamicalMap<D> + ?Sized>(
    map: &M,
    seeds: &[Point<D>],
    cfg: &EngineConfig,
) -> Result<Vec<LevelStats>> {
    let eps = cfg.epsilon;
    let first: Vec<Candidate<D>> = par::map(seeds, |s| trace(map, s, 1, cfg.require_stay))
        .into_iter()
        .flatten()
        .map(|positions| Candidate { positions })
        .collect();
    let mut population = greedy(first, eps);
    let mut stats = Vec::with_capacity(cfg.levels);
    if population.is_empty() {
        return Ok(stats);
    }
    let mut log_r = (population.len() as f64).ln();
    population = thin(population, cfg.budget);

    for m in 1..=cfg.levels {
        // expansion data of the current (length-m) population
        let exps = par::map(&population, |c| expansion(map, &c.positions, m));
        let exps: Vec<Expansion<D>> = exps.into_iter().collect::<Result<_>>()?;
        let max_log_norm = exps
            .iter()
            .map(|e| e.log_norm)
            .fold(f64::NEG_INFINITY, f64::max);
        if m == 1 {
            stats.push(LevelStats {
                m,
                parents: seeds.len(),
                accepted: population.len(),
                log_cardinality: log_r,
                max_log_norm,
            });
        } else if let Some(last) = stats.last_mut() {
            last.max_log_norm = max_log_norm;
        }
        if m == cfg.levels {
            break;
        }
        let len = m + 1;
        let parents = population.len();
        let children: Vec<Vec<Candidate<D>>> = par::map_range(parents, |k| {
            let x0 = population[k].positions[0];
            let e = &exps[k];
            let ratio = (e.log_last - e.log_prev_max).exp();
            let count = if cfg.refine && ratio.is_finite() {
                (ratio.round() as usize).clamp(1, MAX_CHILDREN)
            } else {
                1
            };
            let step = if count > 1 {
                eps * SPACING_SLACK / e.log_last.exp()
            } else {
                0.0
            };
            // the parent itself comes first so greedy keeps it
            let below = ((count - 1) / 2) as f64;
            let mut order: Vec<f64> = vec![0.0];
            order.extend((0..count).map(|c| c as f64 - below).filter(|&k| k != 0.0));
            order
                .into_iter()
                .filter_map(|k| {
                    let shift = k * step;
                    let mut x = x0;
                    for i in 0..D {
                        x[i] += shift * e.direction[i];
                    }
                    trace(map, &x, len, cfg.require_stay).map(|positions| Candidate { positions })
                })
                .collect()
        });
        let candidates: Vec<Candidate<D>> = children.into_iter().flatten().collect();
        let accepted = greedy(candidates, eps);
        if accepted.is_empty() {
            break;
        }
        log_r += (accepted.len() as f64 / parents as f64).ln();
        stats.push(LevelStats {
            m: len,
            parents,
            accepted: accepted.len(),
            log_cardinality: log_r,
            max_log_norm: f64::NEG_INFINITY,
        });
        population = thin(accepted, cfg.budget);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(pts: &[[f64; 2]]) -> Candidate<2> {
        Candidate {
            positions: pts.to_vec(),
        }
    }

    #[test]
    fn greedy_keeps_first_of_close_pairs() {
        let c = vec![
            cand(&[[0.0, 0.0]]),
            cand(&[[0.05, 0.0]]),
            cand(&[[0.2, 0.0]]),
            cand(&[[0.21, 0.0]]),
        ];
        let kept = greedy(c, 0.1);
        let xs: Vec<f64> = kept.iter().map(|k| k.positions[0][0]).collect();
        assert_eq!(xs, vec![0.0, 0.2]);
    }

    #[test]
    fn greedy_uses_bowen_metric() {
        // close at time 0, apart at time 1
        let c = vec![
            cand(&[[0.0, 0.0], [0.0, 0.0]]),
            cand(&[[0.01, 0.0], [0.5, 0.0]]),
        ];
        assert_eq!(greedy(c, 0.1).len(), 2);
    }

    #[test]
    fn greedy_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<[f64; 2]> = (0..400)
            .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let eps = 0.13;
        let mut brute: Vec<[f64; 2]> = Vec::new();
        for p in &pts {
            if brute.iter().all(|q| distance(p, q) > eps) {
                brute.push(*p);
            }
        }
        let kept = greedy(pts.iter().map(|p| cand(&[*p])).collect(), eps);
        let kept: Vec<[f64; 2]> = kept.iter().map(|k| k.positions[0]).collect();
        assert_eq!(kept, brute);
    }

    #[test]
    fn thinning_is_even_and_ordered() {
        let v: Vec<usize> = (0..10).collect();
        assert_eq!(thin(v.clone(), 5), vec![0, 2, 4, 6, 8]);
        assert_eq!(thin(v.clone(), 20), v);
    }
}

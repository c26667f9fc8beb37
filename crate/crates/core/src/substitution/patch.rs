use super::{AffineSimilarity, SubstitutionSystem};

/// Prototile `prototile` placed as `placement(T_prototile)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedTile {
    pub prototile: usize,
    pub placement: AffineSimilarity,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Patch {
    pub tiles: Vec<PlacedTile>,
}

impl Patch {
    pub fn new(tiles: Vec<PlacedTile>) -> Self {
        Patch { tiles }
    }

    /// One copy of prototile `j` in its reference position.
    pub fn single(prototile: usize, order: u32) -> Self {
        Patch { tiles: vec![PlacedTile { prototile, placement: AffineSimilarity::identity(order) }] }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Number of tiles of each of `m` prototiles.
    pub fn census(&self, m: usize) -> Vec<u64> {
        let mut out = vec![0; m];
        for t in &self.tiles {
            out[t.prototile] += 1;
        }
        out
    }
}

/// Applies the substitution `k` times. A tile `f(T_j)` becomes the tiles
/// `(lambda f g)(T_i)` for every `g` in `entries[i][j]`.
pub fn iterate(s: &SubstitutionSystem, p: &Patch, k: usize) -> Patch {
    let expand = AffineSimilarity::linear(s.expansion().clone()).expect("nonzero expansion");
    let m = s.size();
    let mut cur = p.clone();
    for _ in 0..k {
        let mut next = Vec::new();
        for tile in &cur.tiles {
            let outer = expand.compose(&tile.placement);
            for i in 0..m {
                for g in s.entry(i, tile.prototile) {
                    next.push(PlacedTile { prototile: i, placement: outer.compose(g) });
                }
            }
        }
        cur = Patch { tiles: next };
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::substitution::{parse_word_substitution, geometric_realization, Incidence};

    #[test]
    fn counts_follow_matrix_powers() {
        let w = parse_word_substitution("a -> aab\nb -> ab").unwrap();
        let s = geometric_realization(&w).unwrap();
        let p = Patch::single(0, 5);
        assert_eq!(iterate(&s, &p, 0), p);
        assert_eq!(iterate(&s, &p, 1).census(2), vec![2, 1]);
        assert_eq!(iterate(&s, &p, 3).census(2), vec![13, 8]);
        assert_eq!(s.substitution_matrix(), vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn one_dimensional_tiles_abut() {
        let w = parse_word_substitution("a -> aab\nb -> ab").unwrap();
        let s = geometric_realization(&w).unwrap();
        let lengths = [CycNum::one(5), CycNum::from_ints(5, &[0, 1, 0, 0, 1])];
        let patch = iterate(&s, &Patch::single(0, 5), 4);
        let mut ivs: Vec<(CycNum, CycNum)> = patch
            .tiles
            .iter()
            .map(|t| (t.placement.apply(&CycNum::zero(5)), t.placement.apply(&lengths[t.prototile])))
            .collect();
        ivs.sort_by(|a, b| a.0.embed().re.total_cmp(&b.0.embed().re));
        assert!(ivs[0].0.is_zero());
        for w in ivs.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
        let tau2 = CycNum::from_ints(5, &[2, 1, 0, 0, 1]);
        assert_eq!(ivs.last().unwrap().1, tau2.pow(4).unwrap());
    }
}

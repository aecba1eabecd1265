use hwcyclic::series::rat;
use hwcyclic::strata::{diamond_dim, enumerate_np, hasse_edges, np_leq, NPgon};

fn each_shape(mut f: impl FnMut(usize, usize, Vec<NPgon>)) {
    for total in 1..=6usize {
        for d in 0..=total {
            f(total - d, d, enumerate_np(total - d, d, false).unwrap());
        }
    }
}

fn ordinary(c: usize, d: usize) -> NPgon {
    let mut s = vec![rat(0, 1); c];
    s.extend(vec![rat(1, 1); d]);
    NPgon::new(c, d, s).unwrap()
}

#[test]
fn ordinary_is_the_open_stratum() {
    each_shape(|c, d, polys| {
        let ord = ordinary(c, d);
        assert!(polys.contains(&ord));
        assert_eq!(diamond_dim(&ord).1, c * d);
        for b in &polys {
            let dim = diamond_dim(b).1;
            assert!(dim <= c * d);
            assert!(np_leq(b, &ord).unwrap());
            if *b != ord {
                assert!(dim < c * d, "{b:?}");
            }
        }
    });
}

#[test]
fn open_slopes_are_a_subset() {
    each_shape(|c, d, polys| {
        for b in enumerate_np(c, d, true).unwrap() {
            assert!(polys.contains(&b));
            assert!(b.slopes().iter().all(|s| *s > rat(0, 1) && *s < rat(1, 1)));
        }
    });
}

#[test]
fn vertices_are_lattice_points() {
    each_shape(|_, _, polys| {
        for b in polys {
            assert!(b.vertices().iter().all(|(_, y)| y.is_integer()));
        }
    });
}

/// Dimension drops by exactly one along every cover relation.
#[test]
fn covers_drop_dimension_by_one() {
    each_shape(|_, _, polys| {
        for (i, j) in hasse_edges(&polys).unwrap() {
            assert_eq!(diamond_dim(&polys[i]).1 + 1, diamond_dim(&polys[j]).1, "{:?} {:?}", polys[i], polys[j]);
        }
    });
}

/// A polygon is a multiplicity `k >= 0` per reduced slope `a/b` with
/// `sum k b = c + d` and `sum k a = d`; count those by dynamic programming.
#[test]
fn counts_match_slope_multiplicities() {
    each_shape(|c, d, polys| {
        let n = c + d;
        let mut slopes = Vec::new();
        for b in 1..=n {
            for a in 0..=b {
                if num_integer::gcd(a, b) == 1 {
                    slopes.push((a, b));
                }
            }
        }
        let mut ways = vec![vec![0u64; d + 1]; n + 1];
        ways[0][0] = 1;
        for &(a, b) in &slopes {
            let mut next = ways.clone();
            for x in 0..=n {
                for y in 0..=d {
                    if ways[x][y] == 0 {
                        continue;
                    }
                    let mut k = 1;
                    while x + k * b <= n && y + k * a <= d {
                        next[x + k * b][y + k * a] += ways[x][y];
                        k += 1;
                    }
                }
            }
            ways = next;
        }
        assert_eq!(polys.len() as u64, ways[n][d], "c={c} d={d}");
    });
}

mod common;

use proptest::prelude::*;

use qquarter::arith::{hilbert_symbol, int, legendre, rat, ternary_represents, Place, Rational};

use common::{hilbert_oracle_odd, primes_up_to};

fn places_for(a: i64, b: i64) -> Vec<Place> {
    let mut v: Vec<Place> = primes_up_to(a.unsigned_abs().max(b.unsigned_abs()).max(2))
        .into_iter()
        .filter(|&p| p == 2 || a % p as i64 == 0 || b % p as i64 == 0)
        .map(|p| Place::prime(p).unwrap())
        .collect();
    v.push(Place::Infinity);
    v
}

#[test]
fn oracle_known_values() {
    // −1 is a non-square mod 3, so (3, −1)_3 = −1; units pair trivially.
    assert_eq!(hilbert_oracle_odd(3, -1, 3), -1);
    assert_eq!(hilbert_oracle_odd(-1, -1, 3), 1);
    assert_eq!(hilbert_oracle_odd(2, 7, 5), 1);
    // (p, u)_p is the Legendre symbol of u.
    for p in [3i64, 5, 7, 11, 13] {
        for u in 1..p {
            assert_eq!(hilbert_oracle_odd(p, u, p), hilbert_oracle_odd(u, p, p));
            let l = legendre(&u.into(), p as u64).unwrap();
            assert_eq!(hilbert_oracle_odd(p, u, p), l, "({p}, {u})_{p}");
        }
    }
    // (p, p)_p = (p, −1)_p.
    assert_eq!(hilbert_oracle_odd(5, 5, 5), 1);
    assert_eq!(hilbert_oracle_odd(7, 7, 7), -1);
}

#[test]
fn symbol_matches_oracle_on_rationals() {
    // Squares of denominators do not change the symbol.
    for p in [3u64, 5, 7] {
        let v = Place::prime(p).unwrap();
        for a in [-6i64, -5, -3, -1, 2, 3, 7, 10] {
            for b in [-7i64, -2, 3, 5, 14, 15] {
                let want = hilbert_oracle_odd(a, b, p as i64);
                let ra = rat(a, 4);
                let rb = rat(b * 9, 25);
                assert_eq!(hilbert_symbol(&ra, &rb, v).unwrap(), want, "({a}, {b})_{p}");
            }
        }
    }
}

#[test]
fn infinity_and_two() {
    assert_eq!(
        hilbert_symbol(&int(-1), &int(-1), Place::Infinity).unwrap(),
        -1
    );
    assert_eq!(
        hilbert_symbol(&int(-1), &int(3), Place::Infinity).unwrap(),
        1
    );
    assert_eq!(
        hilbert_symbol(&int(-1), &int(-1), Place::prime(2).unwrap()).unwrap(),
        -1
    );
    assert_eq!(
        hilbert_symbol(&int(2), &int(3), Place::prime(2).unwrap()).unwrap(),
        -1
    );
    assert_eq!(
        hilbert_symbol(&int(-1), &int(2), Place::prime(2).unwrap()).unwrap(),
        1
    );
}

/// Small integer points found by search must agree with the local-global test.
#[test]
fn ternary_agrees_with_search() {
    let forms: [[i64; 3]; 4] = [[1, 1, 1], [2, 5, 10], [1, 3, 3], [7, 1, 7]];
    for f in forms {
        let coeffs: [Rational; 3] = f.map(int);
        for t in 1..=40i64 {
            let mut found = false;
            'search: for x in 0..=8i64 {
                for y in 0..=8i64 {
                    for z in 0..=8i64 {
                        if f[0] * x * x + f[1] * y * y + f[2] * z * z == t {
                            found = true;
                            break 'search;
                        }
                    }
                }
            }
            let decided =
                ternary_represents([&coeffs[0], &coeffs[1], &coeffs[2]], &int(t)).unwrap();
            if found {
                assert!(decided, "{f:?} represents {t}");
            }
        }
    }
    // x² + y² + z² misses 7 over ℚ (7 ≡ 7 mod 8) and all negatives.
    let sum3 = [int(1), int(1), int(1)];
    assert!(!ternary_represents([&sum3[0], &sum3[1], &sum3[2]], &int(7)).unwrap());
    assert!(!ternary_represents([&sum3[0], &sum3[1], &sum3[2]], &int(-1)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_formula(a in -500i64..500, b in -500i64..500) {
        prop_assume!(a != 0 && b != 0);
        let product: i8 = places_for(a, b)
            .into_iter()
            .map(|v| hilbert_symbol(&int(a), &int(b), v).unwrap())
            .product();
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn bilinear_and_symmetric(a in 1i64..60, b in 1i64..60, c in 1i64..60, sa in any::<bool>(), sb in any::<bool>()) {
        let a = if sa { -a } else { a };
        let b = if sb { -b } else { b };
        for v in places_for(a * c, b) {
            let ab = hilbert_symbol(&int(a), &int(b), v).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&int(b), &int(a), v).unwrap());
            let cb = hilbert_symbol(&int(c), &int(b), v).unwrap();
            prop_assert_eq!(hilbert_symbol(&int(a * c), &int(b), v).unwrap(), ab * cb);
        }
    }

    #[test]
    fn oracle_equivalence(a in -30i64..30, b in -30i64..30, pi in 0usize..8) {
        prop_assume!(a != 0 && b != 0);
        let p = [3i64, 5, 7, 11, 13, 17, 19, 23][pi];
        let v = Place::prime(p as u64).unwrap();
        prop_assert_eq!(hilbert_symbol(&int(a), &int(b), v).unwrap(), hilbert_oracle_odd(a, b, p));
    }
}

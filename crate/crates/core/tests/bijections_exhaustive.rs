use std::collections::BTreeSet;

use watercells::bijections::{
    certify, water_set, AppendOrTrim, Bijection, ColoredPartitionMap, DecreaseLastPart,
    DiagonalToInternalEven, DoublingToInternalEven, ManyWaterCells, OneWaterCell, ZeroWaterLinear,
};
use watercells::compositions::{enumerate, water_cells, FamilyKind};

const MAX_N: usize = 16;

#[test]
fn zero_water_maps_certify() {
    for n in 4..=MAX_N {
        let combined = ZeroWaterLinear::new(n).unwrap();
        certify(&combined).unwrap();
        certify(combined.first()).unwrap();
        certify(combined.second()).unwrap();
    }
    for n in 2..4 {
        certify(&DecreaseLastPart::new(n).unwrap()).unwrap();
    }
    assert!(AppendOrTrim::new(3).is_err());
}

#[test]
fn one_water_cell_map_certifies() {
    for n in 5..=MAX_N {
        certify(&OneWaterCell::new(n).unwrap()).unwrap();
    }
}

#[test]
fn many_water_cells_map_certifies() {
    for n in 6..=MAX_N {
        for k in 2..=12 {
            certify(&ManyWaterCells::new(n, k).unwrap()).unwrap();
        }
    }
}

#[test]
fn colored_partitions_certify() {
    for n in 0..=MAX_N {
        for k in 0..=12 {
            let map = ColoredPartitionMap::new(n, k);
            let cert = certify(&map).unwrap();
            assert_eq!(cert.size, water_set(n, k).len(), "n={n} k={k}");
        }
    }
}

#[test]
fn colored_partition_images_are_exactly_water_sets() {
    for n in 0..=14 {
        for k in 0..=5 {
            let map = ColoredPartitionMap::new(n, k);
            let images: BTreeSet<_> = map
                .domain()
                .iter()
                .map(|p| map.forward(p).unwrap())
                .collect();
            let expected: BTreeSet<_> = water_set(n, k).into_iter().collect();
            assert_eq!(images, expected, "n={n} k={k}");
        }
    }
}

#[test]
fn internal_even_maps_certify() {
    for n in 0..=MAX_N {
        certify(&DiagonalToInternalEven::new(n)).unwrap();
    }
    for n in 1..=MAX_N {
        certify(&DoublingToInternalEven::new(n).unwrap()).unwrap();
    }
}

#[test]
fn water_counts_move_as_stated() {
    for n in 6..=MAX_N {
        for k in 2..=n - 4 {
            let map = ManyWaterCells::new(n, k).unwrap();
            for c in map.domain() {
                let y = map.forward(&c).unwrap();
                let expected = if y.copy_tag == 0 { k - 1 } else { k };
                assert_eq!(water_cells(&y.composition), expected as u64);
                assert_eq!(y.composition.size(), (n - 1 - y.copy_tag) as u64);
            }
        }
    }
    for n in 5..=MAX_N {
        let map = OneWaterCell::new(n).unwrap();
        for c in map.domain() {
            let y = map.forward(&c).unwrap();
            let expected = if y.copy_tag == 0 { 1 } else { 0 };
            assert_eq!(water_cells(&y.composition), expected);
        }
    }
}

#[test]
fn diagonal_images_have_even_internal_parts() {
    for n in 0..=MAX_N {
        let map = DiagonalToInternalEven::new(n);
        for c in map.domain() {
            let image = map.forward(&c).unwrap();
            assert!(
                image.is_member_of(FamilyKind::InternalEven),
                "{c} -> {image}"
            );
        }
    }
}

#[test]
fn internal_even_counts_are_powers_of_two_minus_one() {
    for m in 1..=9u32 {
        let count = enumerate(FamilyKind::InternalEven, 2 * m - 1).count() as u64;
        assert_eq!(count, (1 << m) - 1);
    }
}

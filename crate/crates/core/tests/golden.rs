use fuzzy_hideals::model_finder::{enumerate_hemirings, find, Filter, SearchQuery};

fn frozen_counts() -> Vec<(usize, usize)> {
    include_str!("golden/hemiring_counts.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("order"))
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn class_counts_match_golden_file() {
    let counts = frozen_counts();
    assert_eq!(counts.len(), 5);
    for (order, classes) in counts {
        assert_eq!(enumerate_hemirings(order).unwrap().len(), classes, "order {order}");
    }
}

#[test]
fn smallest_k_ideal_that_is_not_an_h_ideal() {
    let hits = find(&SearchQuery::up_to(4).with(Filter::HasKIdealNotHIdeal)).unwrap();
    assert_eq!(hits[0].hemiring.order(), 2);
    assert_eq!(hits[0].hemiring.add_rows(), vec![vec![0, 1], vec![1, 1]]);
}

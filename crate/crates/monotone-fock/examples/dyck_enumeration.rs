//! Dyck words and their non-crossing pair partitions.
//!
//! Prints the word/partition table for 2n = 6, the Catalan counts, and a
//! round-trip through the bijection, including the split into connected
//! components.
//!
//! ```bash
//! cargo run -p monotone-fock --example dyck_enumeration
//! ```

use monotone_fock::partitions::{
    dyck_to_pair_partition, enumerate_dyck_words, enumerate_pair_partitions, pair_partition_to_dyck,
};

fn main() {
    println!("Dyck words of length 6 and their pair partitions:");
    for word in enumerate_dyck_words(3).unwrap() {
        let partition = dyck_to_pair_partition(&word).unwrap();
        let components = partition.connected_components().unwrap();
        println!(
            "  {word}   {partition}   components: {}",
            components
                .iter()
                .map(|c| format!("[{c}]"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    println!("\ncounts per half-length:");
    for n in 1..=6 {
        let dyck = enumerate_dyck_words(n).unwrap().len();
        print!("  n={n}: {dyck} Dyck words");
        if n <= 4 {
            let all_pairings = enumerate_pair_partitions(2 * n).unwrap();
            let non_crossing = all_pairings.iter().filter(|p| p.is_non_crossing()).count();
            print!(
                ", {} pairings of which {non_crossing} non-crossing",
                all_pairings.len()
            );
        }
        println!();
    }

    // the bijection is a two-sided inverse
    let mut checked = 0;
    for n in 1..=5 {
        for word in enumerate_dyck_words(n).unwrap() {
            let partition = dyck_to_pair_partition(&word).unwrap();
            assert_eq!(pair_partition_to_dyck(&partition).unwrap(), word);
            checked += 1;
        }
    }
    println!("\nround-trip verified for {checked} words up to length 10");
}

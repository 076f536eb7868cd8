fn main() {
    for p in [6, 8, 10, 12] {
        let t = std::time::Instant::now();
        let r = tqft_core::recoupling::gate::run(p, 4).unwrap();
        println!("p={p} entries={} tets={} pass={} {:?}", r.entries.len(), r.count("tet"), r.all_pass(), t.elapsed());
    }
}

mod common;

use common::pg3;
use regulus_core::audit::{run_audit, Profile};
use regulus_core::io::{
    load_structure, replay_manifest, write_corpus, Manifest, ReportFile, StructureFile,
};

#[test]
fn model_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for q in [2, 3] {
        let (_, s) = pg3(q);
        let path = dir.path().join(format!("pg3{q}.json"));
        StructureFile::from_structure(&s, Some(q))
            .save(&path)
            .unwrap();
        let (back, file) = load_structure(&path).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.digest(), s.digest());
        assert_eq!(file.q, Some(q));
        let n = s.len();
        assert!(file.incidence_rows.iter().all(|r| r.len() == n.div_ceil(4)));
        // row i bit j read straight from the hex text
        for (i, row) in file.incidence_rows.iter().enumerate() {
            let digits: Vec<u32> = row.chars().map(|c| c.to_digit(16).unwrap()).collect();
            for j in 0..n {
                let digit = digits[digits.len() - 1 - j / 4];
                assert_eq!(digit >> (j % 4) & 1 == 1, s.incident(i, j));
            }
        }
    }
}

#[test]
fn corpus_manifest_replays() {
    let dir = tempfile::tempdir().unwrap();
    let (_, s) = pg3(2);
    let manifest = write_corpus(&s, 1, 30, dir.path()).unwrap();
    assert_eq!(
        manifest,
        Manifest::load(&dir.path().join("manifest.json")).unwrap()
    );
    let replayed = replay_manifest(&s, &manifest).unwrap();
    assert_eq!(replayed.len(), 30);
    for (entry, mutant) in manifest.mutants.iter().zip(&replayed) {
        let (loaded, _) = load_structure(&dir.path().join(&entry.file)).unwrap();
        assert_eq!(&loaded, mutant);
        assert_eq!(loaded.digest(), entry.digest);
        let differing: usize = (0..s.len())
            .map(|i| {
                s.row(i).difference(loaded.row(i)).len() + loaded.row(i).difference(s.row(i)).len()
            })
            .sum();
        assert_eq!(differing, 2);
    }
    let again = tempfile::tempdir().unwrap();
    assert_eq!(write_corpus(&s, 1, 30, again.path()).unwrap(), manifest);
    let (_, other) = pg3(3);
    assert!(replay_manifest(&other, &manifest).is_err());
}

#[test]
fn report_file_uses_labels_and_digest() {
    let (_, s) = pg3(2);
    let report = run_audit(&s.toggled(0, 20), Profile::Full);
    let file = ReportFile::from_report(&s.toggled(0, 20), &report);
    assert_eq!(file.structure_digest, s.toggled(0, 20).digest());
    assert_eq!(file.overall, "FAIL");
    let failed = file.items.iter().find(|i| i.status == "FAIL").unwrap();
    assert!(failed
        .witness
        .as_ref()
        .unwrap()
        .iter()
        .all(|l| l.starts_with('L')));
    assert!(failed.witness_role.is_some());
    let text = file.to_json();
    assert_eq!(ReportFile::from_json(&text).unwrap(), file);
    let again = ReportFile::from_report(
        &s.toggled(0, 20),
        &run_audit(&s.toggled(0, 20), Profile::Full),
    );
    assert_eq!(
        again.without_timings().to_json(),
        file.without_timings().to_json()
    );
}

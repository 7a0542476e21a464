use std::io::{self, BufReader, Read};

use latpoly::constructions::fixture;
use latpoly::ks_io::PolytopeReader;

/// Yields `n` copies of a KS record without ever holding the whole text.
struct Synthetic {
    record: &'static [u8],
    left: usize,
    pos: usize,
}

impl Read for Synthetic {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        if self.left == 0 {
            return Ok(0);
        }
        let k = buf.len().min(self.record.len() - self.pos);
        buf[..k].copy_from_slice(&self.record[self.pos..self.pos + k]);
        self.pos += k;
        if self.pos == self.record.len() {
            self.pos = 0;
            self.left -= 1;
        }
        Ok(k)
    }
}

#[test]
fn hundred_thousand_records() {
    let src = Synthetic {
        record: b"2 3  M:4 3 N:4 3\n1 -1 -1\n0 2 -1\n\n",
        left: 100_000,
        pos: 0,
    };
    let reader = BufReader::with_capacity(4096, src);
    let t = fixture("example-1-1").unwrap();
    let mut n = 0usize;
    for p in PolytopeReader::new(reader) {
        assert_eq!(p.unwrap(), t);
        n += 1;
    }
    assert_eq!(n, 100_000);
}

#[test]
fn reader_consumes_lazily() {
    // only the first record is read when only one item is requested
    let src = Synthetic {
        record: b"3 2\n1 0\n-1 2\n-1 -1\n",
        left: usize::MAX,
        pos: 0,
    };
    let mut reader = PolytopeReader::new(BufReader::new(src));
    assert!(reader.next().unwrap().is_ok());
    assert!(reader.next().unwrap().is_ok());
}

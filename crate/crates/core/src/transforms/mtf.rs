//! Move-to-front coding over the full byte alphabet.

/// Recency list of all 256 byte values, most recent first.
#[derive(Debug, Clone)]
pub struct MtfState {
    list: [u8; 256],
}

impl Default for MtfState {
    fn default() -> Self {
        let mut list = [0u8; 256];
        for (i, slot) in list.iter_mut().enumerate() {
            *slot = i as u8;
        }
        MtfState { list }
    }
}

impl MtfState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn recency(&self) -> &[u8; 256] {
        &self.list
    }

    /// Returns the current position of `symbol` and moves it to the front.
    pub fn encode_symbol(&mut self, symbol: u8) -> u8 {
        let pos = self
            .list
            .iter()
            .position(|&s| s == symbol)
            .expect("recency list holds every byte");
        self.list.copy_within(0..pos, 1);
        self.list[0] = symbol;
        pos as u8
    }

    /// Returns the symbol at `index` and moves it to the front.
    pub fn decode_symbol(&mut self, index: u8) -> u8 {
        let pos = index as usize;
        let symbol = self.list[pos];
        self.list.copy_within(0..pos, 1);
        self.list[0] = symbol;
        symbol
    }
}

pub fn mtf_encode(input: &[u8]) -> Vec<u8> {
    let mut state = MtfState::new();
    input.iter().map(|&b| state.encode_symbol(b)).collect()
}

pub fn mtf_decode(input: &[u8]) -> Vec<u8> {
    let mut state = MtfState::new();
    input.iter().map(|&i| state.decode_symbol(i)).collect()
}

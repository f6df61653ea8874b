"""The bidirectional pointer-generator model.

One encoder reads the query and the prepared document; two decoders
generate outward from the query, one to the left (over the reversed
before-query tokens) and one to the right. Each decode step mixes a
vocabulary distribution with a copy distribution over the source
positions, gated by a learned generation probability, so the model can
emit source tokens the vocabulary does not cover.

The model runs one example at a time; at toy scale that keeps the copy
bookkeeping (per-example extended vocabularies) trivial.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn

from .prepare import PreparedExample, extended_token, prepare
from .records import Triple
from .vocab import BOS_NEXT, BOS_PREV, EOS_NEXT, EOS_PREV, PAD, UNK, Vocab

_LOG_FLOOR = 1e-12


@dataclass
class HParams:
    vocab_size: int
    emb_size: int = 32
    hidden_size: int = 64
    max_prev_len: int = 20
    max_next_len: int = 20


class _Decoder(nn.Module):
    """One decoding direction: recurrent cell, attention, and output heads."""

    def __init__(self, emb_size: int, hidden_size: int, vocab_size: int):
        super().__init__()
        self.cell = nn.GRUCell(emb_size, hidden_size)
        self.attn_enc = nn.Linear(hidden_size, hidden_size, bias=False)
        self.attn_dec = nn.Linear(hidden_size, hidden_size)
        self.attn_score = nn.Linear(hidden_size, 1, bias=False)
        self.out = nn.Linear(2 * hidden_size, vocab_size)
        self.gen = nn.Linear(2 * hidden_size + emb_size, 1)


class BidiModel(nn.Module):
    def __init__(self, hparams: HParams):
        super().__init__()
        self.hparams = hparams
        self.embedding = nn.Embedding(hparams.vocab_size, hparams.emb_size,
                                      padding_idx=PAD)
        self.encoder = nn.GRU(hparams.emb_size, hparams.hidden_size,
                              batch_first=True)
        # the decoders share the embedding table but nothing else
        self.dec_prev = _Decoder(hparams.emb_size, hparams.hidden_size,
                                 hparams.vocab_size)
        self.dec_next = _Decoder(hparams.emb_size, hparams.hidden_size,
                                 hparams.vocab_size)

    # -- plumbing -----------------------------------------------------

    def _direction(self, direction: str) -> tuple[_Decoder, int, int]:
        if direction == "prev":
            return self.dec_prev, BOS_PREV, EOS_PREV
        if direction == "next":
            return self.dec_next, BOS_NEXT, EOS_NEXT
        raise ValueError(f"direction must be 'prev' or 'next', got {direction!r}")

    def _collapse(self, ext_id: int) -> int:
        return ext_id if ext_id < self.hparams.vocab_size else UNK

    def _embed(self, token_id: int) -> torch.Tensor:
        index = torch.tensor([self._collapse(token_id)])
        return self.embedding(index)[0]

    def encode(self, source_ids: list[int]) -> tuple[torch.Tensor, torch.Tensor]:
        """Encode the source; returns per-position states and the final state."""
        emb = self.embedding(torch.tensor(source_ids).unsqueeze(0))
        states, final = self.encoder(emb)
        return states.squeeze(0), final.squeeze(0).squeeze(0)

    def _advance(self, decoder: _Decoder, hidden: torch.Tensor,
                 token_id: int) -> torch.Tensor:
        x = self._embed(token_id)
        return decoder.cell(x.unsqueeze(0), hidden.unsqueeze(0)).squeeze(0)

    def _step(self, decoder: _Decoder, enc_states: torch.Tensor,
              example: PreparedExample, hidden: torch.Tensor, token_id: int,
              p_gen_override: float | None = None,
              ) -> tuple[torch.Tensor, torch.Tensor]:
        """Consume one input token; return the next-token distribution.

        The distribution covers the extended vocabulary: the fixed
        vocabulary followed by this example's out-of-vocabulary source
        tokens. It is a convex mixture, so it sums to one.
        """
        x = self._embed(token_id)
        hidden = decoder.cell(x.unsqueeze(0), hidden.unsqueeze(0)).squeeze(0)
        scores = decoder.attn_score(
            torch.tanh(decoder.attn_enc(enc_states) + decoder.attn_dec(hidden))
        ).squeeze(-1)
        attn = torch.softmax(scores, dim=0)
        context = attn @ enc_states
        p_vocab = torch.softmax(decoder.out(torch.cat([hidden, context])), dim=0)
        if p_gen_override is None:
            p_gen = torch.sigmoid(decoder.gen(torch.cat([context, hidden, x])))[0]
        else:
            p_gen = torch.tensor(p_gen_override, dtype=p_vocab.dtype)
        size = self.hparams.vocab_size + len(example.source_oov)
        dist = p_vocab.new_zeros(size)
        dist[: self.hparams.vocab_size] = p_gen * p_vocab
        positions = torch.tensor(example.source_extended_ids)
        dist = dist.index_add(0, positions, (1.0 - p_gen) * attn)
        return dist, hidden

    def _query_feed(self, example: PreparedExample, direction: str,
                    vocab: Vocab) -> list[int]:
        ids = [vocab.id(t) for t in example.query_tokens]
        return list(reversed(ids)) if direction == "prev" else ids

    # -- public surface -----------------------------------------------

    def step_distribution(self, example: PreparedExample, history: list[int],
                          direction: str, vocab: Vocab,
                          p_gen_override: float | None = None) -> torch.Tensor:
        """Next-token distribution after the query and a decode history."""
        decoder, bos, _ = self._direction(direction)
        with torch.no_grad():
            enc_states, hidden = self.encode(example.source_ids)
            inputs = ([bos] + self._query_feed(example, direction, vocab)
                      + list(history))
            for token_id in inputs[:-1]:
                hidden = self._advance(decoder, hidden, token_id)
            dist, _ = self._step(decoder, enc_states, example, hidden,
                                 inputs[-1], p_gen_override)
        return dist

    def example_loss(self, example: PreparedExample, vocab: Vocab) -> torch.Tensor:
        """Summed negative log-likelihood of both directions' targets."""
        enc_states, enc_final = self.encode(example.source_ids)
        total = enc_states.new_zeros(())
        for direction, targets in (("prev", example.prev_target),
                                   ("next", example.next_target)):
            decoder, bos, _ = self._direction(direction)
            hidden = enc_final
            inputs = ([bos] + self._query_feed(example, direction, vocab)
                      + [self._collapse(t) for t in targets[:-1]])
            warm = len(inputs) - len(targets)
            for token_id in inputs[:warm]:
                hidden = self._advance(decoder, hidden, token_id)
            for token_id, target in zip(inputs[warm:], targets):
                dist, hidden = self._step(decoder, enc_states, example,
                                          hidden, token_id)
                total = total - torch.log(dist[target].clamp_min(_LOG_FLOOR))
        return total

    def _decode(self, example: PreparedExample, direction: str, vocab: Vocab,
                max_len: int, beam_width: int,
                trace: list | None) -> list[int]:
        decoder, bos, eos = self._direction(direction)
        enc_states, hidden = self.encode(example.source_ids)
        inputs = [bos] + self._query_feed(example, direction, vocab)
        for token_id in inputs[:-1]:
            hidden = self._advance(decoder, hidden, token_id)

        if beam_width <= 1:
            out: list[int] = []
            token_id = inputs[-1]
            for _ in range(max_len):
                dist, hidden = self._step(decoder, enc_states, example,
                                          hidden, token_id)
                if trace is not None:
                    trace.append(dist.detach())
                ext = int(dist.argmax())
                if ext == eos:
                    break
                out.append(ext)
                token_id = self._collapse(ext)
            return out

        # beam search: hypotheses of (log prob, output ids, hidden, done)
        beams = [(0.0, [], hidden, False)]
        for step in range(max_len):
            grown = []
            for logp, out, state, done in beams:
                if done:
                    grown.append((logp, out, state, done))
                    continue
                token_id = self._collapse(out[-1]) if out else inputs[-1]
                dist, new_state = self._step(decoder, enc_states, example,
                                             state, token_id)
                if trace is not None:
                    trace.append(dist.detach())
                logs = torch.log(dist.clamp_min(_LOG_FLOOR))
                top = torch.topk(logs, min(beam_width, logs.numel()))
                for value, ext in zip(top.values.tolist(), top.indices.tolist()):
                    if ext == eos:
                        grown.append((logp + value, out, new_state, True))
                    else:
                        grown.append((logp + value, out + [ext], new_state, False))
            grown.sort(key=lambda beam: -beam[0])
            beams = grown[:beam_width]
            if all(done for _, _, _, done in beams):
                break
        finished = [beam for beam in beams if beam[3]] or beams
        return max(finished, key=lambda beam: beam[0])[1]

    def generate(self, vocab: Vocab, query: str, document_text: str,
                 beam_width: int = 1, max_prev_len: int | None = None,
                 max_next_len: int | None = None,
                 trace: list | None = None) -> str:
        """Generate a snippet containing the query verbatim.

        Both decoders start from the query and run outward; the output
        is the reversed left decode, the query itself, then the right
        decode, so query inclusion holds by construction. A degenerate
        decode (both directions end immediately) yields the query alone.
        """
        if not query.split():
            raise ValueError("generation requires a non-empty query")
        seed = Triple(query, query, "", (0, len(query)))
        example = prepare(seed, document_text, vocab)
        if max_prev_len is None:
            max_prev_len = self.hparams.max_prev_len
        if max_next_len is None:
            max_next_len = self.hparams.max_next_len
        with torch.no_grad():
            prev_ids = self._decode(example, "prev", vocab, max_prev_len,
                                    beam_width, trace)
            next_ids = self._decode(example, "next", vocab, max_next_len,
                                    beam_width, trace)
        to_token = lambda i: extended_token(i, vocab, example.source_oov)
        words = ([to_token(i) for i in reversed(prev_ids)]
                 + example.query_tokens
                 + [to_token(i) for i in next_ids])
        return " ".join(words)

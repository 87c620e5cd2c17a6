/* 16-lane bottom-up probe for one half word.
 *
 * Probes adjacency positions 0 .. max_pos-1 for the 16 vertices of a
 * half word: gather the pos-th neighbor of each still-active lane,
 * test it against the frontier bitmap, scatter found parents and mark
 * the children in the visited/output words.  Compiled with AVX-512
 * masked gather/scatter when available, otherwise a scalar loop with
 * identical semantics.
 *
 * Caller guarantees: base + 16 <= n (no padding lanes), adjacency
 * offsets fit in int32 (rs32 is the 32-bit copy of the row starts).
 */
#ifndef HYBFS_BU_PROBE_H
#define HYBFS_BU_PROBE_H

#include <stdint.h>

#if defined(__AVX512F__)
#define HYBFS_BU_PROBE_SIMD 1
#include <immintrin.h>

static inline void hybfs_bu_probe_half(
    const uint32_t *adj, const uint32_t *inw, uint32_t *parent,
    const int32_t *rs32, int32_t base, int max_pos, int half,
    uint32_t skip_lanes,
    uint32_t *vis_word, uint32_t *out_word, int64_t *gathers)
{
    const __m512i lane = _mm512_set_epi32(15, 14, 13, 12, 11, 10, 9, 8,
                                          7, 6, 5, 4, 3, 2, 1, 0);
    const __m512i vvert = _mm512_add_epi32(_mm512_set1_epi32(base), lane);
    const __m512i vstart = _mm512_loadu_si512((const void *)(rs32 + base));
    const __m512i vend = _mm512_loadu_si512((const void *)(rs32 + base + 1));
    const __m512i zero = _mm512_setzero_si512();
    const __m512i one = _mm512_set1_epi32(1);
    const __m512i five = _mm512_set1_epi32(0x1F);
    uint16_t mask_done = 0, mask_pos = (uint16_t)skip_lanes;
    int pos;
    for (pos = 0; pos < max_pos; ++pos) {
        uint16_t mask_vis = (uint16_t)((*vis_word >> (16 * half)) & 0xFFFFu);
        uint16_t avail = (uint16_t)~(mask_vis | mask_done | mask_pos);
        if (!avail)
            break;
        __m512i vadd = _mm512_add_epi32(vstart, _mm512_set1_epi32(pos));
        __mmask16 inr = _mm512_mask_cmpgt_epi32_mask(avail, vend, vadd);
        mask_pos |= (uint16_t)(avail & (uint16_t)~inr);
        if (!inr)
            continue;
        *gathers += __builtin_popcount((unsigned)inr);
        __m512i vneig =
            _mm512_mask_i32gather_epi32(zero, inr, vadd, (const void *)adj, 4);
        __m512i vword = _mm512_srli_epi32(vneig, 5);
        __m512i vbits = _mm512_and_si512(vneig, five);
        __m512i fron =
            _mm512_mask_i32gather_epi32(zero, inr, vword, (const void *)inw, 4);
        __m512i bits = _mm512_sllv_epi32(one, vbits);
        __mmask16 found = _mm512_mask_test_epi32_mask(inr, fron, bits);
        if (found) {
            _mm512_mask_i32scatter_epi32((void *)parent, found, vvert, vneig, 4);
            *vis_word |= ((uint32_t)found) << (16 * half);
            *out_word |= ((uint32_t)found) << (16 * half);
            mask_done |= found;
        }
    }
}

#else
#define HYBFS_BU_PROBE_SIMD 0

static inline void hybfs_bu_probe_half(
    const uint32_t *adj, const uint32_t *inw, uint32_t *parent,
    const int32_t *rs32, int32_t base, int max_pos, int half,
    uint32_t skip_lanes,
    uint32_t *vis_word, uint32_t *out_word, int64_t *gathers)
{
    uint16_t mask_done = 0, mask_pos = (uint16_t)skip_lanes;
    int pos, i;
    for (pos = 0; pos < max_pos; ++pos) {
        uint16_t mask_vis = (uint16_t)((*vis_word >> (16 * half)) & 0xFFFFu);
        uint16_t avail = (uint16_t)~(mask_vis | mask_done | mask_pos);
        uint16_t found = 0;
        if (!avail)
            break;
        for (i = 0; i < 16; ++i) {
            int32_t k;
            uint32_t a;
            if (!((avail >> i) & 1))
                continue;
            k = rs32[base + i] + pos;
            if (k >= rs32[base + i + 1]) {
                mask_pos |= (uint16_t)(1u << i);
                continue;
            }
            ++*gathers;
            a = adj[k];
            if ((inw[a >> 5] >> (a & 0x1F)) & 1u) {
                parent[base + i] = a;
                found |= (uint16_t)(1u << i);
            }
        }
        if (found) {
            *vis_word |= ((uint32_t)found) << (16 * half);
            *out_word |= ((uint32_t)found) << (16 * half);
            mask_done |= found;
        }
    }
}

#endif /* __AVX512F__ */

#endif /* HYBFS_BU_PROBE_H */

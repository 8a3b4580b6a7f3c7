/* Copyright 2026 The Squares RNG Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "squares_reference.h"

inline static uint32_t squares32(uint64_t ctr, uint64_t key) {
   uint64_t x, y, z;
   y = x = ctr * key; z = y + key;
   x = x*x + y; x = (x>>32) | (x<<32);        /* round 1 */
   x = x*x + z; x = (x>>32) | (x<<32);        /* round 2 */
   x = x*x + y; x = (x>>32) | (x<<32);        /* round 3 */
   return (x*x + z) >> 32;                    /* round 4 */
}

inline static uint64_t squares64(uint64_t ctr, uint64_t key) {
   uint64_t t, x, y, z;
   y = x = ctr * key; z = y + key;
   x = x*x + y; x = (x>>32) | (x<<32);        /* round 1 */
   x = x*x + z; x = (x>>32) | (x<<32);        /* round 2 */
   x = x*x + y; x = (x>>32) | (x<<32);        /* round 3 */
   t = x = x*x + z; x = (x>>32) | (x<<32);    /* round 4 */
   return t ^ ((x*x + y) >> 32);              /* round 5 */
}

uint32_t ref_squares32(uint64_t ctr, uint64_t key) { return squares32(ctr, key); }
uint64_t ref_squares64(uint64_t ctr, uint64_t key) { return squares64(ctr, key); }

/* Narrow words live in uint32_t; products are formed in 64 bits and then
 * reduced, so every step is exact modulo 2^bits. */
uint32_t ref_squares32_narrow(uint32_t ctr, uint32_t key, unsigned bits) {
   const uint64_t m = (bits == 32) ? 0xffffffffu : ((1u << bits) - 1u);
   const unsigned h = bits / 2;
   uint64_t x, y, z;
   y = x = ((uint64_t)ctr * key) & m; z = (y + key) & m;
   x = (x*x + y) & m; x = ((x>>h) | (x<<h)) & m;
   x = (x*x + z) & m; x = ((x>>h) | (x<<h)) & m;
   x = (x*x + y) & m; x = ((x>>h) | (x<<h)) & m;
   return (uint32_t)(((x*x + z) & m) >> h);
}

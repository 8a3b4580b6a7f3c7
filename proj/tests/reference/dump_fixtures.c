/* Prints known-answer values from the reference transcription. The key
 * arguments are supplied on the command line so this program shares no code
 * with the library. */
#include <inttypes.h>
#include <stdio.h>
#include <stdlib.h>

#include "squares_reference.h"

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    uint64_t ctr = strtoull(argv[i], NULL, 0);
    uint64_t key = strtoull(argv[i + 1], NULL, 0);
    printf("ctr=0x%016" PRIx64 " key=0x%016" PRIx64
           " s32=0x%08" PRIx32 " s64=0x%016" PRIx64 "\n",
           ctr, key, ref_squares32(ctr, key), ref_squares64(ctr, key));
  }
  return 0;
}

#include <cstdio>

int main() {
  std::printf("fieldkit: placeholder\n");
  return 0;
}

#include <cstdio>

int main() {
  std::puts("cpc: placeholder");
  return 0;
}

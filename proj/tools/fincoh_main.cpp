#include <cstdio>

int main() {
  std::printf("fincoh cli placeholder\n");
  return 0;
}

#include "curvecross/counting.hpp"

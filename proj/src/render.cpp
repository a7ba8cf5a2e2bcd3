#include "curvecross/render.hpp"

#include "cubecat/util.hpp"

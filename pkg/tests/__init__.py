# Tests package for Rotmerge

# Test package for GIE Toolkit

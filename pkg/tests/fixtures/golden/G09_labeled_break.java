class G09 {
    public static void main(String[] args) {
        outer:
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                if (i * j == 6) {
                    break outer;
                }
            }
        }
    }
}
